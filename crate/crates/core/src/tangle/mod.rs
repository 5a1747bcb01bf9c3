//! Generator words for morphisms of labeled top tangles, and closed link diagrams.
//!
//! Words are s-expressions:
//!
//! ```text
//! (id ((a b) (a b) ...))
//! (gen KIND LABEL...)
//! (braid OBJ OBJ)
//! (compose F G)      ; F after G
//! (tensor F G)
//! ```

pub mod diagram;

use std::fmt;

use crate::error::{Error, Result};
use crate::hopf::Piece;
use crate::label::{parse_rational, Label};

/// A boundary object: the ordered list of `(lower, upper)` labels of its handles.
pub type Object = Vec<Piece>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Mu,
    Eta,
    Delta,
    Eps,
    Antipode,
    AntipodeInv,
    Ribbon,
    RibbonInv,
    Integral,
}

impl GenKind {
    pub const ALL: [GenKind; 9] = [
        GenKind::Mu,
        GenKind::Eta,
        GenKind::Delta,
        GenKind::Eps,
        GenKind::Antipode,
        GenKind::AntipodeInv,
        GenKind::Ribbon,
        GenKind::RibbonInv,
        GenKind::Integral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Mu => "mu",
            GenKind::Eta => "eta",
            GenKind::Delta => "delta",
            GenKind::Eps => "eps",
            GenKind::Antipode => "S",
            GenKind::AntipodeInv => "Sinv",
            GenKind::Ribbon => "v",
            GenKind::RibbonInv => "vinv",
            GenKind::Integral => "lambda",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Number of label parameters.
    pub fn arity(self) -> usize {
        match self {
            GenKind::Mu | GenKind::Delta => 3,
            GenKind::Antipode | GenKind::AntipodeInv => 2,
            _ => 1,
        }
    }

    /// Source and target objects for the given parameters.
    pub fn signature(self, p: &[Label]) -> (Object, Object) {
        let z = Label::ZERO;
        match self {
            GenKind::Mu => (vec![(p[0], p[1]), (p[0], p[2])], vec![(p[0], p[1] + p[2])]),
            GenKind::Eta => (vec![], vec![(p[0], z)]),
            GenKind::Delta => (vec![(p[0] + p[1], p[2])], vec![(p[0], p[2]), (p[1], p[2])]),
            GenKind::Eps => (vec![(z, p[0])], vec![]),
            GenKind::Antipode | GenKind::AntipodeInv => (vec![(p[0], p[1])], vec![(-p[0], -p[1])]),
            GenKind::Ribbon => (vec![], vec![(p[0], -p[0])]),
            GenKind::RibbonInv => (vec![], vec![(p[0], p[0])]),
            GenKind::Integral => (vec![(p[0], z)], vec![]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MorphExpr {
    Id(Object),
    Gen(GenKind, Vec<Label>),
    Braid(Object, Object),
    Compose(Box<MorphExpr>, Box<MorphExpr>),
    Tensor(Box<MorphExpr>, Box<MorphExpr>),
}

impl MorphExpr {
    pub fn compose(f: MorphExpr, g: MorphExpr) -> MorphExpr {
        MorphExpr::Compose(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: MorphExpr, g: MorphExpr) -> MorphExpr {
        MorphExpr::Tensor(Box::new(f), Box::new(g))
    }

    /// Source and target objects, or the first typing error.
    pub fn typecheck(&self) -> Result<(Object, Object)> {
        self.check_at("root")
    }

    fn check_at(&self, path: &str) -> Result<(Object, Object)> {
        let terr = |msg: String| Error::Type { path: path.to_string(), msg };
        match self {
            MorphExpr::Id(o) => Ok((o.clone(), o.clone())),
            MorphExpr::Gen(k, p) => {
                if p.len() != k.arity() {
                    return Err(terr(format!("{} takes {} labels, got {}", k.name(), k.arity(), p.len())));
                }
                Ok(k.signature(p))
            }
            MorphExpr::Braid(a, b) => Ok(([a.clone(), b.clone()].concat(), [b.clone(), a.clone()].concat())),
            MorphExpr::Compose(f, g) => {
                let (fs, ft) = f.check_at(&format!("{path}.0"))?;
                let (gs, gt) = g.check_at(&format!("{path}.1"))?;
                if fs != gt {
                    return Err(terr(format!(
                        "composition mismatch: target of right factor is {} but source of left factor is {}",
                        show_object(&gt),
                        show_object(&fs)
                    )));
                }
                Ok((gs, ft))
            }
            MorphExpr::Tensor(f, g) => {
                let (fs, ft) = f.check_at(&format!("{path}.0"))?;
                let (gs, gt) = g.check_at(&format!("{path}.1"))?;
                Ok(([fs, gs].concat(), [ft, gt].concat()))
            }
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            MorphExpr::Id(_) | MorphExpr::Gen(..) | MorphExpr::Braid(..) => 1,
            MorphExpr::Compose(f, g) | MorphExpr::Tensor(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// All labels occurring in the word.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        match self {
            MorphExpr::Id(o) => out.extend(o.iter().flat_map(|(a, b)| [*a, *b])),
            MorphExpr::Gen(_, p) => out.extend(p.iter().copied()),
            MorphExpr::Braid(a, b) => out.extend(a.iter().chain(b).flat_map(|(x, y)| [*x, *y])),
            MorphExpr::Compose(f, g) | MorphExpr::Tensor(f, g) => {
                f.collect_labels(out);
                g.collect_labels(out);
            }
        }
    }
}

pub fn show_object(o: &Object) -> String {
    let parts: Vec<String> = o.iter().map(|(a, b)| format!("({a} {b})")).collect();
    format!("({})", parts.join(" "))
}

impl fmt::Display for MorphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphExpr::Id(o) => write!(f, "(id {})", show_object(o)),
            MorphExpr::Gen(k, p) => {
                write!(f, "(gen {}", k.name())?;
                for l in p {
                    write!(f, " {l}")?;
                }
                write!(f, ")")
            }
            MorphExpr::Braid(a, b) => write!(f, "(braid {} {})", show_object(a), show_object(b)),
            MorphExpr::Compose(a, b) => write!(f, "(compose {a} {b})"),
            MorphExpr::Tensor(a, b) => write!(f, "(tensor {a} {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom(_, l, c) | Sexp::List(_, l, c) => (*l, *c),
        }
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn read_sexps(text: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = vec![(Vec::new(), 1, 1)];
    let (mut line, mut col) = (1usize, 0usize);
    let mut atom: Option<(String, usize, usize)> = None;
    let flush = |atom: &mut Option<(String, usize, usize)>, stack: &mut Vec<(Vec<Sexp>, usize, usize)>| {
        if let Some((s, l, c)) = atom.take() {
            stack.last_mut().expect("stack never empty").0.push(Sexp::Atom(s, l, c));
        }
    };
    let mut in_comment = false;
    for ch in text.chars() {
        if ch == '\n' {
            line += 1;
            col = 0;
            in_comment = false;
            flush(&mut atom, &mut stack);
            continue;
        }
        col += 1;
        if in_comment {
            continue;
        }
        match ch {
            ';' => {
                flush(&mut atom, &mut stack);
                in_comment = true;
            }
            '(' => {
                flush(&mut atom, &mut stack);
                stack.push((Vec::new(), line, col));
            }
            ')' => {
                flush(&mut atom, &mut stack);
                if stack.len() == 1 {
                    return Err(perr(line, col, "unbalanced ')'"));
                }
                let (items, l, c) = stack.pop().expect("checked length");
                stack.last_mut().expect("stack never empty").0.push(Sexp::List(items, l, c));
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack),
            c => match atom.as_mut() {
                Some((s, _, _)) => s.push(c),
                None => atom = Some((c.to_string(), line, col)),
            },
        }
    }
    flush(&mut atom, &mut stack);
    if stack.len() > 1 {
        let (_, l, c) = stack.last().expect("nonempty");
        return Err(perr(*l, *c, "unclosed '('"));
    }
    Ok(stack.pop().expect("nonempty").0)
}

fn label_of(s: &Sexp) -> Result<Label> {
    match s {
        Sexp::Atom(a, l, c) => parse_rational(a).map(Label::new).map_err(|_| perr(*l, *c, format!("expected a label, got '{a}'"))),
        Sexp::List(_, l, c) => Err(perr(*l, *c, "expected a label, got a list")),
    }
}

fn object_of(s: &Sexp) -> Result<Object> {
    match s {
        Sexp::List(items, _, _) => items
            .iter()
            .map(|p| match p {
                Sexp::List(ab, l, c) => {
                    if ab.len() != 2 {
                        return Err(perr(*l, *c, "a handle is written (lower upper)"));
                    }
                    Ok((label_of(&ab[0])?, label_of(&ab[1])?))
                }
                Sexp::Atom(_, l, c) => Err(perr(*l, *c, "a handle is written (lower upper)")),
            })
            .collect(),
        Sexp::Atom(_, l, c) => Err(perr(*l, *c, "expected an object ((a b) ...)")),
    }
}

fn expr_of(s: &Sexp) -> Result<MorphExpr> {
    let (items, line, col) = match s {
        Sexp::List(items, l, c) => (items, *l, *c),
        Sexp::Atom(a, l, c) => return Err(perr(*l, *c, format!("expected an expression, got '{a}'"))),
    };
    let head = match items.first() {
        Some(Sexp::Atom(h, _, _)) => h.as_str(),
        _ => return Err(perr(line, col, "expression must start with a keyword")),
    };
    let want = |n: usize| {
        if items.len() != n + 1 {
            Err(perr(line, col, format!("'{head}' takes {n} arguments, got {}", items.len() - 1)))
        } else {
            Ok(())
        }
    };
    match head {
        "id" => {
            want(1)?;
            Ok(MorphExpr::Id(object_of(&items[1])?))
        }
        "braid" => {
            want(2)?;
            Ok(MorphExpr::Braid(object_of(&items[1])?, object_of(&items[2])?))
        }
        "compose" | "tensor" => {
            want(2)?;
            let (f, g) = (expr_of(&items[1])?, expr_of(&items[2])?);
            Ok(if head == "compose" { MorphExpr::compose(f, g) } else { MorphExpr::tensor(f, g) })
        }
        "gen" => {
            let (kl, kc) = items.get(1).map(|k| k.pos()).unwrap_or((line, col));
            let kind = match items.get(1) {
                Some(Sexp::Atom(k, _, _)) => GenKind::from_name(k).ok_or_else(|| perr(kl, kc, format!("unknown generator '{k}'")))?,
                _ => return Err(perr(kl, kc, "expected a generator name")),
            };
            want(kind.arity() + 1)?;
            let p = items[2..].iter().map(label_of).collect::<Result<Vec<_>>>()?;
            Ok(MorphExpr::Gen(kind, p))
        }
        other => Err(perr(line, col, format!("unknown keyword '{other}'"))),
    }
}

/// Parses a single generator word.
pub fn parse_expr(text: &str) -> Result<MorphExpr> {
    let items = read_sexps(text)?;
    match items.as_slice() {
        [one] => expr_of(one),
        [] => Err(perr(1, 1, "empty input")),
        [_, second, ..] => {
            let (l, c) = second.pos();
            Err(perr(l, c, "trailing input after expression"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let e = parse_expr("(compose (gen eps 0) (gen eta 0))").unwrap();
        assert_eq!(e.to_string(), "(compose (gen eps 0) (gen eta 0))");
        assert_eq!(e.typecheck().unwrap(), (vec![], vec![]));
        let e = parse_expr("(id ((0 0)))").unwrap();
        assert_eq!(e, MorphExpr::Id(vec![(Label::ZERO, Label::ZERO)]));
        let e = parse_expr("  (tensor (gen S 1/2 -1/2)\n (braid ((0 1)) ((1/4 0))))  ; comment").unwrap();
        assert_eq!(e.to_string(), "(tensor (gen S 1/2 3/2) (braid ((0 1)) ((1/4 0))))");
    }

    #[test]
    fn reports_positions() {
        match parse_expr("(compose\n  (gen foo 0) (gen eta 0))") {
            Err(Error::Parse { line: 2, col: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("(id ((0 0))"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("(gen mu 0 0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("(id ((0 0))) (id ())"), Err(Error::Parse { .. })));
    }

    #[test]
    fn typechecks_signatures() {
        let h = Label::from_frac(1, 2);
        let d = MorphExpr::Gen(GenKind::Delta, vec![h, h, Label::ZERO]);
        assert_eq!(d.typecheck().unwrap(), (vec![(Label::from_int(1), Label::ZERO)], vec![(h, Label::ZERO), (h, Label::ZERO)]));
        let bad = parse_expr("(compose (gen mu 0 0 0) (gen delta 0 0 1/2))").unwrap();
        match bad.typecheck() {
            Err(Error::Type { path, .. }) => assert_eq!(path, "root"),
            other => panic!("{other:?}"),
        }
        let lam = parse_expr("(compose (gen lambda 0) (gen v 0))").unwrap();
        assert!(lam.typecheck().is_ok());
        let lam = parse_expr("(compose (gen lambda 1/2) (gen v 1/2))").unwrap();
        assert!(lam.typecheck().is_err());
    }
}
