use crate::diag::Pos;

/// A name together with where it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub name: String,
    pub pos: Pos,
}

/// A builder call such as `product(walking_arrow(), chain(3))`, or a bare
/// name argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(Located),
    Call { head: Located, args: Vec<Expr> },
}

impl Expr {
    pub fn pos(&self) -> &Pos {
        match self {
            Expr::Name(l) => &l.pos,
            Expr::Call { head, .. } => &head.pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Category,
    Functor,
    NatTrans,
    Diagram,
    DiagMor,
    Cleavage,
    Opfib,
    Cocone,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::NatTrans => "nattrans",
            Kind::Diagram => "diagram",
            Kind::DiagMor => "diagmor",
            Kind::Cleavage => "cleavage",
            Kind::Opfib => "opfib",
            Kind::Cocone => "cocone",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Kind> {
        Some(match s {
            "category" => Kind::Category,
            "functor" => Kind::Functor,
            "nattrans" => Kind::NatTrans,
            "diagram" => Kind::Diagram,
            "diagmor" => Kind::DiagMor,
            "cleavage" => Kind::Cleavage,
            "opfib" => Kind::Opfib,
            "cocone" => Kind::Cocone,
            _ => return None,
        })
    }
}

pub type Pair = (Located, Located);
pub type Triple = (Located, Located, Located);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Built(Expr),
    Category {
        objects: Vec<Located>,
        arrows: Vec<Triple>,
        ids: Vec<Pair>,
        compose: Vec<Triple>,
    },
    Functor {
        dom: Located,
        cod: Located,
        ob: Vec<Pair>,
        arr: Vec<Pair>,
    },
    NatTrans {
        dom: Located,
        cod: Located,
        at: Vec<Pair>,
    },
    Diagram {
        base: Located,
        at: Vec<Pair>,
    },
    DiagMor {
        dom: Located,
        cod: Located,
        components: Vec<Pair>,
    },
    Cleavage {
        functor: Located,
        lifts: Vec<Triple>,
    },
    Opfib {
        over: Option<Located>,
        total: Option<Located>,
        components: Vec<Triple>,
    },
    Cocone {
        diagram: Located,
        vertex: Option<Located>,
        components: Vec<Pair>,
        cells: Vec<Triple>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: Kind,
    pub name: Located,
    pub def: Def,
}
