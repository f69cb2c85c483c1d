//! The `.fincat` presentation format.
//!
//! ```text
//! category two {
//!   objects: 0 1
//!   morphisms: u: 0 -> 1
//!   compose: thin
//! }
//! preorder v { elements: 0 1 2 ; le: 0<=1, 0<=2 }
//! functor d0 : one -> two { objects: * -> 0 }
//! nat t : f => g { a: m }
//! pocategory k : two { le: f<=g }
//! monad m : k { functor: t ; eta: a -> x ; mu: a -> y }
//! command c { op: comma ; args: d0 d1 }
//! ```
//!
//! Statements end at `;` or at the end of a line. `#` starts a comment.
//! Identities are implicit and named `id_<object>` unless `identities:`
//! renames them. `compose: thin` fills the table of a thin category.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Comma,
    Sep,
    LBrace,
    RBrace,
    Eq,
    Dot,
    Arrow,
    DArrow,
    Le,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '*'
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let (tok, len) = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                ':' => (Tok::Colon, 1),
                ',' => (Tok::Comma, 1),
                ';' => (Tok::Sep, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                '.' => (Tok::Dot, 1),
                '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
                '=' if chars.get(i + 1) == Some(&'>') => (Tok::DArrow, 2),
                '<' if chars.get(i + 1) == Some(&'=') => (Tok::Le, 2),
                '=' => (Tok::Eq, 1),
                c if is_ident_char(c) => {
                    let start = i;
                    // `-` joins words (`kz-witness`) unless it starts `->`
                    while i < chars.len()
                        && (is_ident_char(chars[i]) || (chars[i] == '-' && chars.get(i + 1) != Some(&'>')))
                    {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    out.push(Token { tok: Tok::Ident(s), line: line_no, col });
                    continue;
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("col {col}: unexpected character `{other}`"),
                    })
                }
            };
            out.push(Token { tok, line: line_no, col });
            i += len;
        }
        out.push(Token { tok: Tok::Sep, line: line_no, col: chars.len() + 1 });
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryBlock {
    pub name: String,
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    pub identities: Vec<(String, String)>,
    /// `(g, f, h)` for `g.f=h`
    pub compose: Vec<(String, String, String)>,
    pub thin: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreorderBlock {
    pub name: String,
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorBlock {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NatBlock {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub components: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PoCategoryBlock {
    pub name: String,
    pub base: String,
    pub le: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonadBlock {
    pub name: String,
    pub on: String,
    pub functor: String,
    pub eta: Vec<(String, String)>,
    pub mu: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandBlock {
    pub name: String,
    pub op: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Category(CategoryBlock),
    Preorder(PreorderBlock),
    Functor(FunctorBlock),
    Nat(NatBlock),
    PoCategory(PoCategoryBlock),
    Monad(MonadBlock),
    Command(CommandBlock),
}

impl Block {
    pub fn kind(&self) -> &'static str {
        match self {
            Block::Category(_) => "category",
            Block::Preorder(_) => "preorder",
            Block::Functor(_) => "functor",
            Block::Nat(_) => "nat",
            Block::PoCategory(_) => "pocategory",
            Block::Monad(_) => "monad",
            Block::Command(_) => "command",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Block::Category(b) => &b.name,
            Block::Preorder(b) => &b.name,
            Block::Functor(b) => &b.name,
            Block::Nat(b) => &b.name,
            Block::PoCategory(b) => &b.name,
            Block::Monad(b) => &b.name,
            Block::Command(b) => &b.name,
        }
    }
}

/// Parsed blocks in file order, with the line each block starts on.
/// Equality ignores positions.
#[derive(Debug, Clone, Default)]
pub struct SpecFile {
    pub blocks: Vec<Block>,
    pub lines: Vec<usize>,
}

impl PartialEq for SpecFile {
    fn eq(&self, other: &SpecFile) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for SpecFile {}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type Stmt = (String, usize, Vec<Token>);

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn skip_seps(&mut self) {
        while matches!(self.peek(), Some(Token { tok: Tok::Sep, .. })) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = match self.peek().or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        };
        Err(Error::Parse { line, msg: format!("col {col}: {}", msg.into()) })
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(tok) if tok.tok == t => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    /// `key: tokens` up to `;`, end of line or `}`.
    fn statements(&mut self) -> Result<Vec<Stmt>> {
        self.skip_seps();
        self.expect(Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        loop {
            self.skip_seps();
            match self.peek() {
                Some(Token { tok: Tok::RBrace, .. }) => {
                    self.pos += 1;
                    return Ok(out);
                }
                None => return self.err("unterminated block"),
                _ => {}
            }
            let line = self.peek().map_or(0, |t| t.line);
            let key = self.ident("a key")?;
            self.expect(Tok::Colon, "`:` after key")?;
            let mut vals = Vec::new();
            while let Some(t) = self.peek() {
                if matches!(t.tok, Tok::Sep | Tok::RBrace) {
                    break;
                }
                vals.push(t.clone());
                self.pos += 1;
            }
            out.push((key, line, vals));
        }
    }

    fn parse(mut self) -> Result<SpecFile> {
        let mut spec = SpecFile::default();
        loop {
            self.skip_seps();
            let Some(t) = self.peek() else { break };
            let line = t.line;
            let kind = self.ident("a block kind")?;
            let name = self.ident("a block name")?;
            let block = match kind.as_str() {
                "category" => Block::Category(category(&name, self.statements()?)?),
                "preorder" => Block::Preorder(preorder(&name, self.statements()?)?),
                "functor" => {
                    self.expect(Tok::Colon, "`:`")?;
                    let dom = self.ident("a domain")?;
                    self.expect(Tok::Arrow, "`->`")?;
                    let cod = self.ident("a codomain")?;
                    let (objects, morphisms) = functor(self.statements()?)?;
                    Block::Functor(FunctorBlock { name, dom, cod, objects, morphisms })
                }
                "nat" => {
                    self.expect(Tok::Colon, "`:`")?;
                    let src = self.ident("a source functor")?;
                    self.expect(Tok::DArrow, "`=>`")?;
                    let tgt = self.ident("a target functor")?;
                    let mut components = Vec::new();
                    for (key, line, vals) in self.statements()? {
                        components.push((key, single(line, &vals)?));
                    }
                    Block::Nat(NatBlock { name, src, tgt, components })
                }
                "pocategory" => {
                    self.expect(Tok::Colon, "`:`")?;
                    let base = self.ident("a category")?;
                    let mut le = Vec::new();
                    for (key, line, vals) in self.statements()? {
                        match key.as_str() {
                            "le" => le.extend(pairs(line, &vals, Tok::Le, "<=")?),
                            _ => return Err(unknown_key(line, &key, "pocategory")),
                        }
                    }
                    Block::PoCategory(PoCategoryBlock { name, base, le })
                }
                "monad" => {
                    self.expect(Tok::Colon, "`:`")?;
                    let on = self.ident("a po-category")?;
                    let mut m = MonadBlock { name, on, ..Default::default() };
                    for (key, line, vals) in self.statements()? {
                        match key.as_str() {
                            "functor" => m.functor = single(line, &vals)?,
                            "eta" => m.eta.extend(pairs(line, &vals, Tok::Arrow, "->")?),
                            "mu" => m.mu.extend(pairs(line, &vals, Tok::Arrow, "->")?),
                            _ => return Err(unknown_key(line, &key, "monad")),
                        }
                    }
                    Block::Monad(m)
                }
                "command" => {
                    let mut c = CommandBlock { name, ..Default::default() };
                    for (key, line, vals) in self.statements()? {
                        match key.as_str() {
                            "op" => c.op = single(line, &vals)?,
                            "args" => c.args.extend(idents(line, &vals)?),
                            _ => return Err(unknown_key(line, &key, "command")),
                        }
                    }
                    Block::Command(c)
                }
                other => return Err(Error::Parse { line, msg: format!("unknown block kind `{other}`") }),
            };
            spec.blocks.push(block);
            spec.lines.push(line);
        }
        Ok(spec)
    }
}

fn unknown_key(line: usize, key: &str, kind: &str) -> Error {
    Error::Parse { line, msg: format!("unknown key `{key}` in {kind} block") }
}

fn bad(line: usize, t: Option<&Token>, msg: &str) -> Error {
    match t {
        Some(t) => Error::Parse { line: t.line, msg: format!("col {}: {msg}", t.col) },
        None => Error::Parse { line, msg: msg.to_string() },
    }
}

/// Splits on commas; commas are optional between identifiers.
fn entries(vals: &[Token]) -> Vec<&[Token]> {
    vals.split(|t| t.tok == Tok::Comma).filter(|e| !e.is_empty()).collect()
}

fn name_of(line: usize, t: Option<&Token>) -> Result<String> {
    match t {
        Some(Token { tok: Tok::Ident(s), .. }) => Ok(s.clone()),
        other => Err(bad(line, other, "expected an identifier")),
    }
}

fn idents(line: usize, vals: &[Token]) -> Result<Vec<String>> {
    vals.iter().filter(|t| t.tok != Tok::Comma).map(|t| name_of(line, Some(t))).collect()
}

fn single(line: usize, vals: &[Token]) -> Result<String> {
    match vals {
        [t] => name_of(line, Some(t)),
        _ => Err(bad(line, vals.get(1), "expected a single identifier")),
    }
}

/// Entries of the form `x OP y`.
fn pairs(line: usize, vals: &[Token], op: Tok, shown: &str) -> Result<Vec<(String, String)>> {
    entries(vals)
        .into_iter()
        .map(|e| match e {
            [a, o, b] if o.tok == op => Ok((name_of(line, Some(a))?, name_of(line, Some(b))?)),
            _ => Err(bad(line, e.first(), &format!("expected `x {shown} y`"))),
        })
        .collect()
}

fn category(name: &str, stmts: Vec<Stmt>) -> Result<CategoryBlock> {
    let mut c = CategoryBlock { name: name.to_string(), ..Default::default() };
    for (key, line, vals) in stmts {
        match key.as_str() {
            "objects" => c.objects.extend(idents(line, &vals)?),
            "morphisms" => {
                for e in entries(&vals) {
                    match e {
                        [f, c1, a, ar, b] if c1.tok == Tok::Colon && ar.tok == Tok::Arrow => c.morphisms.push((
                            name_of(line, Some(f))?,
                            name_of(line, Some(a))?,
                            name_of(line, Some(b))?,
                        )),
                        _ => return Err(bad(line, e.first(), "expected `f: a -> b`")),
                    }
                }
            }
            "identities" => c.identities.extend(pairs(line, &vals, Tok::Eq, "=")?),
            "compose" => {
                if let [Token { tok: Tok::Ident(s), .. }] = &vals[..] {
                    if s == "thin" {
                        c.thin = true;
                        continue;
                    }
                }
                for e in entries(&vals) {
                    match e {
                        [g, d, f, eq, h] if d.tok == Tok::Dot && eq.tok == Tok::Eq => {
                            c.compose.push((name_of(line, Some(g))?, name_of(line, Some(f))?, name_of(line, Some(h))?))
                        }
                        _ => return Err(bad(line, e.first(), "expected `g.f=h`")),
                    }
                }
            }
            _ => return Err(unknown_key(line, &key, "category")),
        }
    }
    Ok(c)
}

fn preorder(name: &str, stmts: Vec<Stmt>) -> Result<PreorderBlock> {
    let mut p = PreorderBlock { name: name.to_string(), ..Default::default() };
    for (key, line, vals) in stmts {
        match key.as_str() {
            "elements" => p.elements.extend(idents(line, &vals)?),
            "le" => p.le.extend(pairs(line, &vals, Tok::Le, "<=")?),
            _ => return Err(unknown_key(line, &key, "preorder")),
        }
    }
    Ok(p)
}

type Maps = (Vec<(String, String)>, Vec<(String, String)>);

fn functor(stmts: Vec<Stmt>) -> Result<Maps> {
    let (mut objects, mut morphisms) = (Vec::new(), Vec::new());
    for (key, line, vals) in stmts {
        match key.as_str() {
            "objects" => objects.extend(pairs(line, &vals, Tok::Arrow, "->")?),
            "morphisms" => morphisms.extend(pairs(line, &vals, Tok::Arrow, "->")?),
            _ => return Err(unknown_key(line, &key, "functor")),
        }
    }
    Ok((objects, morphisms))
}

pub fn parse_spec_file(text: &str) -> Result<SpecFile> {
    Parser { toks: lex(text)?, pos: 0 }.parse()
}

fn join_pairs(ps: &[(String, String)], op: &str) -> String {
    ps.iter().map(|(a, b)| format!("{a}{op}{b}")).collect::<Vec<_>>().join(", ")
}

/// Canonical text; parsing it back gives an equal [`SpecFile`].
pub fn serialize_spec_file(spec: &SpecFile) -> String {
    let mut out = String::new();
    for b in &spec.blocks {
        let mut body: Vec<String> = Vec::new();
        let mut line = |key: &str, val: String, keep: bool| {
            if keep {
                body.push(format!("  {key}: {val}"));
            }
        };
        let head = match b {
            Block::Category(c) => {
                line("objects", c.objects.join(" "), !c.objects.is_empty());
                let ms: Vec<String> = c.morphisms.iter().map(|(f, a, b)| format!("{f}: {a} -> {b}")).collect();
                line("morphisms", ms.join(", "), !ms.is_empty());
                line("identities", join_pairs(&c.identities, "="), !c.identities.is_empty());
                line("compose", "thin".into(), c.thin);
                let cs: Vec<String> = c.compose.iter().map(|(g, f, h)| format!("{g}.{f}={h}")).collect();
                line("compose", cs.join(", "), !cs.is_empty());
                format!("category {}", c.name)
            }
            Block::Preorder(p) => {
                line("elements", p.elements.join(" "), !p.elements.is_empty());
                line("le", join_pairs(&p.le, "<="), !p.le.is_empty());
                format!("preorder {}", p.name)
            }
            Block::Functor(f) => {
                line("objects", join_pairs(&f.objects, " -> "), !f.objects.is_empty());
                line("morphisms", join_pairs(&f.morphisms, " -> "), !f.morphisms.is_empty());
                format!("functor {} : {} -> {}", f.name, f.dom, f.cod)
            }
            Block::Nat(n) => {
                for (o, m) in &n.components {
                    line(o, m.clone(), true);
                }
                format!("nat {} : {} => {}", n.name, n.src, n.tgt)
            }
            Block::PoCategory(k) => {
                line("le", join_pairs(&k.le, "<="), !k.le.is_empty());
                format!("pocategory {} : {}", k.name, k.base)
            }
            Block::Monad(m) => {
                line("functor", m.functor.clone(), !m.functor.is_empty());
                line("eta", join_pairs(&m.eta, " -> "), !m.eta.is_empty());
                line("mu", join_pairs(&m.mu, " -> "), !m.mu.is_empty());
                format!("monad {} : {}", m.name, m.on)
            }
            Block::Command(c) => {
                line("op", c.op.clone(), !c.op.is_empty());
                line("args", c.args.join(" "), !c.args.is_empty());
                format!("command {}", c.name)
            }
        };
        let _ = writeln!(out, "{head} {{");
        for l in body {
            let _ = writeln!(out, "{l}");
        }
        let _ = writeln!(out, "}}");
    }
    out
}
