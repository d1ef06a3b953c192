use crate::ast::{Decl, Def, Expr, Kind, Located, Pair, Triple};
use crate::diag::{Class, Diagnostic, Pos};
use crate::lexer::{lex, Tok, Token};

struct Cursor<'a> {
    toks: &'a [Token],
    at: usize,
    /// Position reported when the input ends.
    end: Pos,
}

fn syntax(pos: &Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(Class::Syntax, pos.clone(), msg)
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek()
            .map_or_else(|| self.end.clone(), |t| t.pos.clone())
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.at);
        self.at += 1;
        t
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn skip_newlines(&mut self) {
        while self.peek().is_some_and(|t| t.tok == Tok::Newline) {
            self.at += 1;
        }
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".into(), |t| t.tok.describe())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| t.tok == *tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), Diagnostic> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(syntax(
                &self.pos(),
                format!("expected {}, found {}", tok.describe(), self.found()),
            ))
        }
    }

    fn name(&mut self, what: &str) -> Result<Located, Diagnostic> {
        match self.peek() {
            Some(Token {
                tok: Tok::Name(n),
                pos,
            }) => {
                self.at += 1;
                Ok(Located {
                    name: n.clone(),
                    pos: pos.clone(),
                })
            }
            _ => Err(syntax(
                &self.pos(),
                format!("expected {what}, found {}", self.found()),
            )),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        match self.peek() {
            Some(Token {
                tok: Tok::Name(n), ..
            }) if n == kw => {
                self.at += 1;
                Ok(())
            }
            _ => Err(syntax(
                &self.pos(),
                format!("expected `{kw}`, found {}", self.found()),
            )),
        }
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        if self.done() {
            Ok(())
        } else {
            Err(syntax(
                &self.pos(),
                format!("unexpected {} after the end of the item", self.found()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let head = self.name("a name or builder call")?;
        if !self.eat(&Tok::LParen) {
            return Ok(Expr::Name(head));
        }
        let mut args = Vec::new();
        self.skip_newlines();
        if !self.eat(&Tok::RParen) {
            loop {
                self.skip_newlines();
                args.push(self.expr()?);
                self.skip_newlines();
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        Ok(Expr::Call { head, args })
    }
}

/// One separator-delimited entry of a block.
struct Item<'a> {
    toks: &'a [Token],
}

impl<'a> Item<'a> {
    fn cursor(&self) -> Cursor<'a> {
        let end = self.toks.last().expect("items are non-empty").pos.clone();
        Cursor {
            toks: self.toks,
            at: 0,
            end,
        }
    }

    fn pos(&self) -> Pos {
        self.toks[0].pos.clone()
    }

    /// `key:` at the start of the item, if `key` is one of `keys`.
    fn header(&self, keys: &[&str]) -> Option<(&'a str, Item<'a>)> {
        match self.toks {
            [Token {
                tok: Tok::Name(k), ..
            }, Token {
                tok: Tok::Colon, ..
            }, rest @ ..]
                if keys.contains(&k.as_str()) =>
            {
                Some((k.as_str(), Item { toks: rest }))
            }
            _ => None,
        }
    }

    fn starts_with(&self, kw: &str) -> bool {
        matches!(self.toks.first(), Some(Token { tok: Tok::Name(n), .. }) if n == kw)
    }
}

/// Splits a block body at depth-zero `;`, `,` and line ends.
fn items(toks: &[Token]) -> Vec<Item<'_>> {
    let mut out = Vec::new();
    let (mut start, mut depth) = (0, 0usize);
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth = depth.saturating_sub(1),
            Tok::Semi | Tok::Comma | Tok::Newline if depth == 0 => {
                if i > start {
                    out.push(Item {
                        toks: &toks[start..i],
                    });
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if toks.len() > start {
        out.push(Item {
            toks: &toks[start..],
        });
    }
    out
}

fn pair_with(item: &Item<'_>, sep: &Tok, what: (&str, &str)) -> Result<Pair, Diagnostic> {
    let mut c = item.cursor();
    let a = c.name(what.0)?;
    c.expect(sep)?;
    let b = c.name(what.1)?;
    c.finish()?;
    Ok((a, b))
}

/// `kw a = b`
fn keyed_pair(item: &Item<'_>, kw: &str, what: (&str, &str)) -> Result<Pair, Diagnostic> {
    let mut c = item.cursor();
    c.keyword(kw)?;
    let a = c.name(what.0)?;
    c.expect(&Tok::Eq)?;
    let b = c.name(what.1)?;
    c.finish()?;
    Ok((a, b))
}

fn single(item: &Item<'_>, what: &str) -> Result<Located, Diagnostic> {
    let mut c = item.cursor();
    let a = c.name(what)?;
    c.finish()?;
    Ok(a)
}

fn unknown_item(item: &Item<'_>, kind: Kind, expected: &str) -> Diagnostic {
    syntax(
        &item.pos(),
        format!(
            "unrecognized entry in {} block; expected {expected}",
            kind.keyword()
        ),
    )
}

fn category_block(body: &[Token]) -> Result<Def, Diagnostic> {
    const KEYS: [&str; 4] = ["objects", "arrows", "ids", "compose"];
    let (mut objects, mut arrows, mut ids, mut compose) = (vec![], vec![], vec![], vec![]);
    let mut current: Option<&str> = None;
    for item in items(body) {
        let item = match item.header(&KEYS) {
            Some((k, rest)) => {
                current = Some(k);
                if rest.toks.is_empty() {
                    continue;
                }
                rest
            }
            None => item,
        };
        match current {
            Some("objects") => {
                let mut c = item.cursor();
                while !c.done() {
                    objects.push(c.name("an object name")?);
                }
            }
            Some("arrows") => {
                let mut c = item.cursor();
                let f = c.name("a morphism name")?;
                c.expect(&Tok::Colon)?;
                let a = c.name("a source object")?;
                c.expect(&Tok::Arrow)?;
                let b = c.name("a target object")?;
                c.finish()?;
                arrows.push((f, a, b));
            }
            Some("ids") => ids.push(pair_with(
                &item,
                &Tok::Eq,
                ("an object", "a morphism name"),
            )?),
            Some("compose") => {
                let mut c = item.cursor();
                let g = c.name("a morphism")?;
                c.expect(&Tok::Dot)?;
                let f = c.name("a morphism")?;
                c.expect(&Tok::Eq)?;
                let h = c.name("a morphism")?;
                c.finish()?;
                compose.push((g, f, h));
            }
            _ => {
                return Err(unknown_item(
                    &item,
                    Kind::Category,
                    "`objects:`, `arrows:`, `ids:` or `compose:`",
                ))
            }
        }
    }
    Ok(Def::Category {
        objects,
        arrows,
        ids,
        compose,
    })
}

fn functor_block(dom: Located, cod: Located, body: &[Token]) -> Result<Def, Diagnostic> {
    let (mut ob, mut arr) = (vec![], vec![]);
    let mut current: Option<&str> = None;
    for item in items(body) {
        let item = match item.header(&["ob", "arr"]) {
            Some((k, rest)) => {
                current = Some(k);
                if rest.toks.is_empty() {
                    continue;
                }
                rest
            }
            None => item,
        };
        let target = match current {
            Some("ob") => &mut ob,
            Some("arr") => &mut arr,
            _ => return Err(unknown_item(&item, Kind::Functor, "`ob:` or `arr:`")),
        };
        target.push(pair_with(&item, &Tok::MapsTo, ("a name", "its image"))?);
    }
    Ok(Def::Functor { dom, cod, ob, arr })
}

fn keyed_block(kind: Kind, body: &[Token], kw: &str) -> Result<Vec<Pair>, Diagnostic> {
    items(body)
        .iter()
        .map(|item| {
            if !item.starts_with(kw) {
                return Err(unknown_item(item, kind, &format!("`{kw} ... = ...`")));
            }
            keyed_pair(item, kw, ("a name", "a value"))
        })
        .collect()
}

fn cleavage_block(functor: Located, body: &[Token]) -> Result<Def, Diagnostic> {
    let mut lifts = Vec::new();
    for item in items(body) {
        if !item.starts_with("lift") {
            return Err(unknown_item(&item, Kind::Cleavage, "`lift (E, f) |-> e`"));
        }
        let mut c = item.cursor();
        c.keyword("lift")?;
        c.expect(&Tok::LParen)?;
        let e = c.name("a total object")?;
        c.expect(&Tok::Comma)?;
        let f = c.name("a base morphism")?;
        c.expect(&Tok::RParen)?;
        c.expect(&Tok::MapsTo)?;
        let l = c.name("a total morphism")?;
        c.finish()?;
        lifts.push((e, f, l));
    }
    Ok(Def::Cleavage { functor, lifts })
}

fn opfib_block(body: &[Token]) -> Result<Def, Diagnostic> {
    let (mut over, mut total, mut components): (_, _, Vec<Triple>) = (None, None, vec![]);
    for item in items(body) {
        if let Some((k, rest)) = item.header(&["over", "total"]) {
            let v = single(&rest, "a diagram name")?;
            if k == "over" {
                over = Some(v)
            } else {
                total = Some(v)
            }
            continue;
        }
        if !item.starts_with("component") {
            return Err(unknown_item(
                &item,
                Kind::Opfib,
                "`over:`, `total:` or `component a = (p, c)`",
            ));
        }
        let mut c = item.cursor();
        c.keyword("component")?;
        let a = c.name("a base object")?;
        c.expect(&Tok::Eq)?;
        c.expect(&Tok::LParen)?;
        let p = c.name("a functor")?;
        c.expect(&Tok::Comma)?;
        let cl = c.name("a cleavage")?;
        c.expect(&Tok::RParen)?;
        c.finish()?;
        components.push((a, p, cl));
    }
    Ok(Def::Opfib {
        over,
        total,
        components,
    })
}

fn cocone_block(diagram: Located, body: &[Token]) -> Result<Def, Diagnostic> {
    let (mut vertex, mut components, mut cells) = (None, vec![], vec![]);
    for item in items(body) {
        if let Some((_, rest)) = item.header(&["vertex"]) {
            vertex = Some(single(&rest, "a category name")?);
        } else if item.starts_with("component") {
            components.push(keyed_pair(
                &item,
                "component",
                ("a base object", "a functor"),
            )?);
        } else if item.starts_with("cell") {
            let mut c = item.cursor();
            c.keyword("cell")?;
            c.expect(&Tok::LParen)?;
            let f = c.name("a base morphism")?;
            c.expect(&Tok::Comma)?;
            let x = c.name("an object of the source fibre")?;
            c.expect(&Tok::RParen)?;
            c.expect(&Tok::MapsTo)?;
            let m = c.name("a vertex morphism")?;
            c.finish()?;
            cells.push((f, x, m));
        } else {
            return Err(unknown_item(
                &item,
                Kind::Cocone,
                "`vertex:`, `component a = T` or `cell (f, x) |-> m`",
            ));
        }
    }
    Ok(Def::Cocone {
        diagram,
        vertex,
        components,
        cells,
    })
}

/// `: A -> B` or `: A => B`
fn signature(c: &mut Cursor<'_>, sep: &Tok) -> Result<(Located, Located), Diagnostic> {
    c.expect(&Tok::Colon)?;
    let a = c.name("a name")?;
    c.expect(sep)?;
    let b = c.name("a name")?;
    Ok((a, b))
}

/// The tokens strictly inside a brace block starting at the cursor.
fn block<'a>(c: &mut Cursor<'a>) -> Result<&'a [Token], Diagnostic> {
    let open = c.pos();
    c.expect(&Tok::LBrace)?;
    let start = c.at;
    let mut depth = 0usize;
    while let Some(t) = c.next() {
        match t.tok {
            Tok::LBrace => {
                return Err(syntax(&t.pos, "blocks do not nest"));
            }
            Tok::RBrace if depth == 0 => return Ok(&c.toks[start..c.at - 1]),
            Tok::LParen => depth += 1,
            Tok::RParen => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    Err(syntax(&open, "unclosed `{`"))
}

fn decl(c: &mut Cursor<'_>) -> Result<Decl, Diagnostic> {
    let kw = c.name("a declaration keyword")?;
    let kind = Kind::from_keyword(&kw.name).ok_or_else(|| {
        syntax(
            &kw.pos,
            format!(
                "unknown declaration `{}`; expected category, functor, nattrans, diagram, diagmor, cleavage, opfib or cocone",
                kw.name
            ),
        )
    })?;
    let name = c.name("an entity name")?;
    if c.eat(&Tok::Eq) {
        let e = c.expr()?;
        return Ok(Decl {
            kind,
            name,
            def: Def::Built(e),
        });
    }
    let def = match kind {
        Kind::Category => category_block(block(c)?)?,
        Kind::Functor => {
            let (dom, cod) = signature(c, &Tok::Arrow)?;
            functor_block(dom, cod, block(c)?)?
        }
        Kind::NatTrans => {
            let (dom, cod) = signature(c, &Tok::DArrow)?;
            Def::NatTrans {
                dom,
                cod,
                at: keyed_block(kind, block(c)?, "at")?,
            }
        }
        Kind::Diagram => {
            c.keyword("on")?;
            let base = c.name("a base category")?;
            Def::Diagram {
                base,
                at: keyed_block(kind, block(c)?, "at")?,
            }
        }
        Kind::DiagMor => {
            let (dom, cod) = signature(c, &Tok::DArrow)?;
            Def::DiagMor {
                dom,
                cod,
                components: keyed_block(kind, block(c)?, "component")?,
            }
        }
        Kind::Cleavage => {
            c.keyword("for")?;
            let functor = c.name("a functor")?;
            cleavage_block(functor, block(c)?)?
        }
        Kind::Opfib => opfib_block(block(c)?)?,
        Kind::Cocone => {
            c.keyword("for")?;
            let diagram = c.name("a diagram")?;
            cocone_block(diagram, block(c)?)?
        }
    };
    Ok(Decl { kind, name, def })
}

/// Parses one file into declarations, stopping at the first error.
pub fn parse_file(file: &str, text: &str) -> Result<Vec<Decl>, Diagnostic> {
    let toks = lex(file, text)?;
    let end = Pos {
        file: file.to_owned(),
        line: text.lines().count().max(1),
        col: 1,
    };
    let mut c = Cursor {
        toks: &toks,
        at: 0,
        end,
    };
    let mut out = Vec::new();
    loop {
        c.skip_newlines();
        if c.done() {
            return Ok(out);
        }
        out.push(decl(&mut c)?);
        if !c.done() && !c.eat(&Tok::Newline) && !c.eat(&Tok::Semi) {
            return Err(syntax(
                &c.pos(),
                format!(
                    "expected end of line after a declaration, found {}",
                    c.found()
                ),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_block_with_continued_clauses() {
        let src = "category A {\n objects: a b c\n arrows: f: a -> b ; g: b -> c\n  h: a -> c\n compose: g.f = h\n}\n";
        let decls = parse_file("t", src).unwrap();
        let Def::Category {
            objects,
            arrows,
            compose,
            ..
        } = &decls[0].def
        else {
            panic!()
        };
        assert_eq!(objects.len(), 3);
        assert_eq!(arrows.len(), 3);
        assert_eq!(compose[0].2.name, "h");
        assert_eq!(compose[0].2.pos.line, 5);
    }

    #[test]
    fn builder_form() {
        let decls = parse_file("t", "category P = product(walking_arrow(), chain(3))").unwrap();
        let Def::Built(Expr::Call { head, args }) = &decls[0].def else {
            panic!()
        };
        assert_eq!(head.name, "product");
        assert_eq!(args.len(), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_file("t.cat", "functor F : A B { }").unwrap_err();
        assert_eq!(err.class, Class::Syntax);
        assert_eq!((err.pos.line, err.pos.col), (1, 15));
        let err = parse_file("t.cat", "category A {\n objects: a\n").unwrap_err();
        assert_eq!(err.class, Class::Syntax);
        let err = parse_file("t.cat", "widget W { }").unwrap_err();
        assert!(err.message.contains("unknown declaration"));
    }

    #[test]
    fn cleavage_and_opfib_blocks() {
        let src = "cleavage c for p {\n lift (x, f) |-> \"(f,id)\"\n}\nopfib o {\n over: F\n total: G\n component a = (p, c)\n}";
        let decls = parse_file("t", src).unwrap();
        assert_eq!(decls.len(), 2);
        let Def::Opfib {
            components, over, ..
        } = &decls[1].def
        else {
            panic!()
        };
        assert_eq!(over.as_ref().unwrap().name, "F");
        assert_eq!(components[0].2.name, "c");
    }
}
