//! Line-oriented instance files.
//!
//! ```text
//! # full lexicographic Z^2
//! name lexz2
//! ambient [2]
//! mode full
//! unit [1,0]
//! primes [0]
//! ```
//!
//! Lines are `key value`. Keys: `name`, `ambient [d,..]`,
//! `mode full|generators|construction`, `gen [v,..]` (repeatable),
//! `verify_box N`, `let ident = expr`, `construction expr`, `unit [v,..]`
//! and `primes [l,..] [l,..] ..` (level vectors of the family's primes).
//! Expressions:
//!
//! ```text
//! expr := ident | trivial | full([d,..]) | gens([d,..], [v,..], ..)
//!       | sum(expr, expr) | lex(expr) | quotient(expr, [l,..]) | sub(expr, [l,..])
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use ellgroup::{AVec, Ambient, Frame, FrameError, Int, IntVec, LGroup, LGroupError, LevelPattern};
use thiserror::Error;

/// Box radius used by `generate` when a file does not set `verify_box`.
pub const DEFAULT_VERIFY_BOX: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Build(String),
    #[error(transparent)]
    Guard(FrameError),
}

impl From<LGroupError> for FormatError {
    fn from(e: LGroupError) -> Self {
        FormatError::Build(e.to_string())
    }
}

impl From<FrameError> for FormatError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::TooLarge { .. } => FormatError::Guard(e),
            FrameError::Group(g) => g.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ref(String),
    Trivial,
    Full(Vec<usize>),
    Gens(Vec<usize>, Vec<IntVec>),
    Sum(Box<Expr>, Box<Expr>),
    Lex(Box<Expr>),
    Quotient(Box<Expr>, Vec<usize>),
    Sub(Box<Expr>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Full,
    Generators(Vec<IntVec>),
    Construction { lets: Vec<(String, Expr)>, expr: Expr },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: String,
    pub ambient: Option<Vec<usize>>,
    pub body: Body,
    pub verify_box: Option<u32>,
    pub unit: Option<IntVec>,
    pub primes: Option<Vec<Vec<usize>>>,
}

/// A built instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub group: LGroup,
    pub unit: Option<AVec>,
    pub primes: Option<Vec<LevelPattern>>,
}

fn write_list<T: fmt::Display>(out: &mut String, xs: &[T]) {
    out.push('[');
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{x}");
    }
    out.push(']');
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Expr::Ref(name) => s.push_str(name),
            Expr::Trivial => s.push_str("trivial"),
            Expr::Full(d) => {
                s.push_str("full(");
                write_list(&mut s, d);
                s.push(')');
            }
            Expr::Gens(d, gens) => {
                s.push_str("gens(");
                write_list(&mut s, d);
                for g in gens {
                    s.push_str(", ");
                    write_list(&mut s, g);
                }
                s.push(')');
            }
            Expr::Sum(a, b) => s = format!("sum({a}, {b})"),
            Expr::Lex(a) => s = format!("lex({a})"),
            Expr::Quotient(a, l) | Expr::Sub(a, l) => {
                let _ = write!(s, "{}({a}, ", if matches!(self, Expr::Quotient(..)) { "quotient" } else { "sub" });
                write_list(&mut s, l);
                s.push(')');
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "name {}", self.name);
        if let Some(d) = &self.ambient {
            s.push_str("ambient ");
            write_list(&mut s, d);
            s.push('\n');
        }
        match &self.body {
            Body::Full => s.push_str("mode full\n"),
            Body::Generators(gens) => {
                s.push_str("mode generators\n");
                for g in gens {
                    s.push_str("gen ");
                    write_list(&mut s, g);
                    s.push('\n');
                }
            }
            Body::Construction { lets, expr } => {
                s.push_str("mode construction\n");
                for (name, e) in lets {
                    let _ = writeln!(s, "let {name} = {e}");
                }
                let _ = writeln!(s, "construction {expr}");
            }
        }
        if let Some(b) = self.verify_box {
            let _ = writeln!(s, "verify_box {b}");
        }
        if let Some(u) = &self.unit {
            s.push_str("unit ");
            write_list(&mut s, u);
            s.push('\n');
        }
        if let Some(ps) = &self.primes {
            s.push_str("primes");
            for p in ps {
                s.push(' ');
                write_list(&mut s, p);
            }
            s.push('\n');
        }
        f.write_str(&s)
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text: text.as_bytes(), pos: 0, line }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax { line: self.line, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FormatError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<String, FormatError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && is_ident_byte(self.text[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an identifier");
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<Int, FormatError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.text.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.text[start..self.pos]).unwrap_or("");
        match word.parse::<Int>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("expected an integer, found '{word}'")),
        }
    }

    fn int_list(&mut self) -> Result<IntVec, FormatError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
    }

    fn usize_list(&mut self) -> Result<Vec<usize>, FormatError> {
        let line = self.line;
        self.int_list()?
            .into_iter()
            .map(|v| {
                usize::try_from(v)
                    .map_err(|_| FormatError::Syntax { line, message: "expected a natural number".into() })
            })
            .collect()
    }

    fn expr(&mut self) -> Result<Expr, FormatError> {
        let word = self.ident()?;
        let has_args = self.peek() == Some(b'(');
        let e = match (word.as_str(), has_args) {
            ("trivial", false) => Expr::Trivial,
            ("full", true) => {
                self.expect(b'(')?;
                let d = self.usize_list()?;
                self.expect(b')')?;
                Expr::Full(d)
            }
            ("gens", true) => {
                self.expect(b'(')?;
                let d = self.usize_list()?;
                let mut gens = Vec::new();
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    gens.push(self.int_list()?);
                }
                self.expect(b')')?;
                Expr::Gens(d, gens)
            }
            ("sum", true) => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Expr::Sum(Box::new(a), Box::new(b))
            }
            ("lex", true) => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b')')?;
                Expr::Lex(Box::new(a))
            }
            ("quotient" | "sub", true) => {
                self.expect(b'(')?;
                let a = Box::new(self.expr()?);
                self.expect(b',')?;
                let l = self.usize_list()?;
                self.expect(b')')?;
                if word == "quotient" {
                    Expr::Quotient(a, l)
                } else {
                    Expr::Sub(a, l)
                }
            }
            (_, false) if !is_keyword(&word) => Expr::Ref(word),
            _ => return self.err(format!("malformed expression at '{word}'")),
        };
        Ok(e)
    }
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.')
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "trivial" | "full" | "gens" | "sum" | "lex" | "quotient" | "sub")
}

/// Parses an instance file.
pub fn parse(text: &str) -> Result<InstanceFile, FormatError> {
    let mut name = None;
    let mut ambient = None;
    let mut mode: Option<(usize, String)> = None;
    let mut gens = Vec::new();
    let mut lets: Vec<(String, Expr)> = Vec::new();
    let mut construction = None;
    let mut verify_box = None;
    let mut unit = None;
    let mut primes = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let mut c = Cursor::new(rest, line);
        let dup = |what: &str| FormatError::Syntax { line, message: format!("duplicate '{what}'") };
        match key {
            "name" => {
                if name.is_some() {
                    return Err(dup("name"));
                }
                name = Some(c.ident()?);
            }
            "ambient" => {
                if ambient.is_some() {
                    return Err(dup("ambient"));
                }
                ambient = Some(c.usize_list()?);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(dup("mode"));
                }
                mode = Some((line, c.ident()?));
            }
            "gen" => gens.push((line, c.int_list()?)),
            "verify_box" => {
                let v = c.int()?;
                verify_box =
                    Some(u32::try_from(v).map_err(|_| FormatError::Syntax { line, message: "bad box radius".into() })?);
            }
            "let" => {
                let ident = c.ident()?;
                if is_keyword(&ident) || lets.iter().any(|(n, _)| *n == ident) {
                    return c.err(format!("cannot bind '{ident}'"));
                }
                c.expect(b'=')?;
                let e = c.expr()?;
                check_refs(&e, &lets, line)?;
                lets.push((ident, e));
            }
            "construction" => {
                if construction.is_some() {
                    return Err(dup("construction"));
                }
                let e = c.expr()?;
                check_refs(&e, &lets, line)?;
                construction = Some((line, e));
            }
            "unit" => unit = Some(c.int_list()?),
            "primes" => {
                let mut ps = Vec::new();
                while !c.at_end() {
                    ps.push(c.usize_list()?);
                }
                if ps.is_empty() {
                    return c.err("expected at least one level vector");
                }
                primes = Some(ps);
            }
            other => {
                return Err(FormatError::Syntax { line, message: format!("unknown key '{other}'") });
            }
        }
        if !c.at_end() {
            return c.err("trailing input");
        }
    }
    let syntax = |line, message: &str| FormatError::Syntax { line, message: message.into() };
    let name = name.ok_or_else(|| syntax(1, "missing 'name'"))?;
    let (mode_line, mode) = mode.ok_or_else(|| syntax(1, "missing 'mode'"))?;
    let body = match mode.as_str() {
        "full" | "generators" => {
            if ambient.is_none() {
                return Err(syntax(mode_line, "this mode needs 'ambient'"));
            }
            if !lets.is_empty() || construction.is_some() {
                return Err(syntax(mode_line, "'let' and 'construction' need mode construction"));
            }
            if mode == "full" {
                if let Some((l, _)) = gens.first() {
                    return Err(syntax(*l, "'gen' needs mode generators"));
                }
                Body::Full
            } else {
                let dim: usize = ambient.as_ref().map_or(0, |d| d.iter().sum());
                for (l, g) in &gens {
                    if g.len() != dim {
                        return Err(syntax(
                            *l,
                            &format!("dimension: generator has {} entries, ambient has {dim}", g.len()),
                        ));
                    }
                }
                Body::Generators(gens.into_iter().map(|(_, g)| g).collect())
            }
        }
        "construction" => {
            if let Some((l, _)) = gens.first() {
                return Err(syntax(*l, "'gen' needs mode generators"));
            }
            let (_, expr) = construction.ok_or_else(|| syntax(mode_line, "missing 'construction'"))?;
            Body::Construction { lets, expr }
        }
        other => return Err(syntax(mode_line, &format!("unknown mode '{other}'"))),
    };
    Ok(InstanceFile { name, ambient, body, verify_box, unit, primes })
}

fn check_refs(e: &Expr, lets: &[(String, Expr)], line: usize) -> Result<(), FormatError> {
    match e {
        Expr::Ref(n) if !lets.iter().any(|(m, _)| m == n) => {
            Err(FormatError::Syntax { line, message: format!("undefined reference '{n}'") })
        }
        Expr::Sum(a, b) => check_refs(a, lets, line).and_then(|_| check_refs(b, lets, line)),
        Expr::Lex(a) | Expr::Quotient(a, _) | Expr::Sub(a, _) => check_refs(a, lets, line),
        _ => Ok(()),
    }
}

fn ambient_of(depths: &[usize]) -> Result<Ambient, FormatError> {
    Ambient::from_depths(depths).map_err(|e| FormatError::Build(e.to_string()))
}

fn sub_pattern(frame: &Frame, levels: &[usize]) -> Result<ellgroup::SubgroupId, FormatError> {
    let p = LevelPattern(levels.to_vec());
    frame.group().ambient().check_pattern(&p).map_err(|e| FormatError::Build(e.to_string()))?;
    Ok(frame.cut(&p))
}

fn eval(e: &Expr, env: &BTreeMap<String, LGroup>, verify_box: u32, cap: usize) -> Result<LGroup, FormatError> {
    Ok(match e {
        Expr::Ref(n) => env.get(n).cloned().ok_or_else(|| FormatError::Build(format!("undefined reference '{n}'")))?,
        Expr::Trivial => LGroup::trivial(),
        Expr::Full(d) => LGroup::full(ambient_of(d)?),
        Expr::Gens(d, gens) => {
            let amb = ambient_of(d)?;
            let gens: Vec<AVec> = gens.iter().map(|g| AVec(g.clone())).collect();
            LGroup::generate(amb, &gens, verify_box)?
        }
        Expr::Sum(a, b) => eval(a, env, verify_box, cap)?.direct_sum(&eval(b, env, verify_box, cap)?),
        Expr::Lex(a) => eval(a, env, verify_box, cap)?.lex_extension(),
        Expr::Quotient(a, l) | Expr::Sub(a, l) => {
            let frame = Frame::with_cap(eval(a, env, verify_box, cap)?, cap)?;
            let h = sub_pattern(&frame, l)?;
            if matches!(e, Expr::Quotient(..)) {
                frame.quotient(h).group
            } else {
                frame.sub_as_lgroup(h).group
            }
        }
    })
}

/// Builds the group and the optional unit and family of a parsed file.
pub fn build(file: &InstanceFile, cap: usize) -> Result<Instance, FormatError> {
    let verify_box = file.verify_box.unwrap_or(DEFAULT_VERIFY_BOX);
    let group = match &file.body {
        Body::Full => LGroup::full(ambient_of(file.ambient.as_deref().unwrap_or(&[]))?),
        Body::Generators(gens) => {
            let amb = ambient_of(file.ambient.as_deref().unwrap_or(&[]))?;
            let gens: Vec<AVec> = gens.iter().map(|g| AVec(g.clone())).collect();
            LGroup::generate(amb, &gens, verify_box)?
        }
        Body::Construction { lets, expr } => {
            let mut env = BTreeMap::new();
            for (name, e) in lets {
                let g = eval(e, &env, verify_box, cap)?;
                env.insert(name.clone(), g);
            }
            let g = eval(expr, &env, verify_box, cap)?;
            if let Some(d) = &file.ambient {
                if *d != g.ambient().depths() {
                    return Err(FormatError::Build(format!(
                        "dimension: declared ambient {d:?} but construction has {:?}",
                        g.ambient().depths()
                    )));
                }
            }
            g
        }
    };
    let unit = match &file.unit {
        Some(u) => {
            let u = AVec(u.clone());
            group.check_member(&u)?;
            Some(u)
        }
        None => None,
    };
    let primes = match &file.primes {
        Some(ps) => {
            let mut out = Vec::new();
            for p in ps {
                let p = LevelPattern(p.clone());
                group.ambient().check_pattern(&p).map_err(|e| FormatError::Build(e.to_string()))?;
                out.push(p);
            }
            Some(out)
        }
        None => None,
    };
    Ok(Instance { name: file.name.clone(), group, unit, primes })
}

/// Parses level vectors such as `"[0,1] [1,0]"` given on the command line.
pub fn parse_level_list(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut c = Cursor::new(text, 1);
    let mut out = Vec::new();
    while !c.at_end() {
        out.push(c.usize_list()?);
        if c.peek() == Some(b';') || c.peek() == Some(b',') {
            c.pos += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ellgroup::exact::ivec;

    #[test]
    fn parse_examples() {
        let f = parse("name a\nambient [1,1]\nmode full\n").unwrap();
        assert_eq!(build(&f, 4096).unwrap().group, LGroup::full(Ambient::from_depths(&[1, 1]).unwrap()));
        let f = parse("name b\nambient [2]\nmode full").unwrap();
        assert_eq!(build(&f, 4096).unwrap().group, LGroup::full(Ambient::from_depths(&[2]).unwrap()));
        let e = parse("name c\nambient [1,1]\nmode generators\ngen [1,2,3]\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 4, ref message } if message.contains("dimension")));
    }

    #[test]
    fn constructions_build() {
        let text = "name ext\nmode construction\nlet d = gens([1,1], [1,1])\nlet z = full([1])\nconstruction sum(lex(d), quotient(full([2]), [1]))\nprimes [0,1,0] [1,0,1]\n";
        let f = parse(text).unwrap();
        let inst = build(&f, 4096).unwrap();
        assert_eq!(inst.group.ambient().depths(), vec![2, 2, 1]);
        assert_eq!(inst.primes.unwrap().len(), 2);
        assert!(parse("name x\nmode construction\nconstruction lex(y)\n").is_err());
    }

    #[test]
    fn print_then_parse_is_identity() {
        let f = InstanceFile {
            name: "t".into(),
            ambient: Some(vec![2, 1]),
            body: Body::Generators(vec![ivec(&[1, -2, 3]), ivec(&[0, 0, 1])]),
            verify_box: Some(1),
            unit: Some(ivec(&[1, 0, 1])),
            primes: Some(vec![vec![1, 1], vec![2, 0]]),
        };
        assert_eq!(parse(&f.to_string()).unwrap(), f);
        let g = parse("name u\nmode construction\nlet a=full([1])\nconstruction sub(sum(a,a),[1,0])\n").unwrap();
        assert_eq!(parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse("name a\nmode full\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse("name a\nambient [1]\nmode full\nbogus 1\n"), Err(FormatError::Syntax { line: 4, .. })));
        assert!(matches!(parse("name a\nambient [1\nmode full\n"), Err(FormatError::Syntax { line: 2, .. })));
    }

    #[test]
    fn level_lists() {
        assert_eq!(parse_level_list("[0,1] [1,0]").unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(parse_level_list("[2];[0]").unwrap(), vec![vec![2], vec![0]]);
    }
}
