use std::fmt;

use grothkit_core::fincat::{CategoryReport, DiagramReport, FunctorReport, NatTransReport};
use grothkit_core::groth::CoconeError;
use grothkit_core::indexed::DiagramOpfibReport;
use serde::Serialize;

/// Which stage rejected the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Lexical,
    Syntax,
    /// A name that does not resolve, or resolves to the wrong kind.
    Reference,
    /// Well-formed input whose tables break a law.
    Semantic,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Lexical => "lexical",
            Class::Syntax => "syntax",
            Class::Reference => "reference",
            Class::Semantic => "semantic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pos {
    pub file: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

/// The validator output behind a semantic error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "entity", rename_all = "snake_case")]
pub enum Law {
    Category {
        report: CategoryReport,
    },
    Functor {
        report: FunctorReport,
    },
    NatTrans {
        report: NatTransReport,
    },
    Diagram {
        report: DiagramReport,
    },
    Cleavage {
        detail: String,
    },
    Opfib {
        report: DiagramOpfibReport,
    },
    Cocone {
        error: CoconeError,
    },
    /// A builder applied to arguments it does not accept.
    Builder {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{pos}: {class} error: {message}")]
pub struct Diagnostic {
    pub class: Class,
    pub pos: Pos,
    pub message: String,
    pub law: Option<Box<Law>>,
}

impl Diagnostic {
    pub fn new(class: Class, pos: Pos, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            class,
            pos,
            message: message.into(),
            law: None,
        }
    }

    /// A semantic error; the message is the first line of the law report.
    pub fn law(pos: Pos, what: &str, law: Law) -> Diagnostic {
        let detail = match &law {
            Law::Category { report } => report.to_string(),
            Law::Functor { report } => report.to_string(),
            Law::NatTrans { report } => report.to_string(),
            Law::Diagram { report } => report.to_string(),
            Law::Cleavage { detail } | Law::Builder { detail } => detail.clone(),
            Law::Opfib { report } => report.to_string(),
            Law::Cocone { error } => error.to_string(),
        };
        let line = detail.lines().next().unwrap_or_default().to_owned();
        Diagnostic {
            class: Class::Semantic,
            pos,
            message: format!("{what}: {line}"),
            law: Some(Box::new(law)),
        }
    }
}
