//! The term language over the signature `{0, 1, ~, &, |, w, w*}`.
//!
//! Surface syntax supports the macros `R(t,s)`, `ed(t)`, `w0(t)`, `w0*(t)`
//! and `mu(z,x)`, all of which expand at parse time; the abstract syntax
//! carries only the primitive signature. Printing re-sugars `w(0, t)` to
//! `w0(t)` (and likewise for `w*`), which re-parses to the identical tree.

use crate::oml::FiniteOml;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Neg(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    W(Box<Term>, Box<Term>),
    Wstar(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Box::new(l), Box::new(r))
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    pub fn w(l: Term, r: Term) -> Term {
        Term::W(Box::new(l), Box::new(r))
    }

    pub fn wstar(l: Term, r: Term) -> Term {
        Term::Wstar(Box::new(l), Box::new(r))
    }

    /// `t R s = (t & s) | (~t & ~s)`.
    pub fn r(t: Term, s: Term) -> Term {
        Term::join(Term::meet(t.clone(), s.clone()), Term::meet(Term::neg(t), Term::neg(s)))
    }

    /// `ed(t) = ~w(0, ~t)`.
    pub fn ed(t: Term) -> Term {
        Term::neg(Term::w(Term::Zero, Term::neg(t)))
    }

    /// `mu(z, x) = z & (~z | x)`.
    pub fn mu(z: Term, x: Term) -> Term {
        Term::meet(z.clone(), Term::join(Term::neg(z), x))
    }

    /// Node count.
    pub fn complexity(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Var(_) => 1,
            Term::Neg(t) => 1 + t.complexity(),
            Term::Meet(l, r) | Term::Join(l, r) | Term::W(l, r) | Term::Wstar(l, r) => {
                1 + l.complexity() + r.complexity()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Var(_) => 0,
            Term::Neg(t) => 1 + t.depth(),
            Term::Meet(l, r) | Term::Join(l, r) | Term::W(l, r) | Term::Wstar(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) => t.collect_vars(out),
            Term::Meet(l, r) | Term::Join(l, r) | Term::W(l, r) | Term::Wstar(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn uses_expanded_signature(&self) -> bool {
        match self {
            Term::Zero | Term::One | Term::Var(_) => false,
            Term::Neg(t) => t.uses_expanded_signature(),
            Term::Meet(l, r) | Term::Join(l, r) => {
                l.uses_expanded_signature() || r.uses_expanded_signature()
            }
            Term::W(_, _) | Term::Wstar(_, _) => true,
        }
    }

    /// Simultaneous substitution; variables outside the map are unchanged.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::One => Term::One,
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Neg(t) => Term::neg(t.substitute(map)),
            Term::Meet(l, r) => Term::meet(l.substitute(map), r.substitute(map)),
            Term::Join(l, r) => Term::join(l.substitute(map), r.substitute(map)),
            Term::W(l, r) => Term::w(l.substitute(map), r.substitute(map)),
            Term::Wstar(l, r) => Term::wstar(l.substitute(map), r.substitute(map)),
        }
    }

    /// Matches `self` as a pattern (variables are metavariables) against a
    /// closed-or-not target, returning the binding if consistent.
    pub fn match_against(&self, target: &Term) -> Option<BTreeMap<String, Term>> {
        let mut binding = BTreeMap::new();
        if self.match_into(target, &mut binding) {
            Some(binding)
        } else {
            None
        }
    }

    fn match_into(&self, target: &Term, binding: &mut BTreeMap<String, Term>) -> bool {
        match (self, target) {
            (Term::Var(v), t) => match binding.get(v) {
                Some(prev) => prev == t,
                None => {
                    binding.insert(v.clone(), t.clone());
                    true
                }
            },
            (Term::Zero, Term::Zero) | (Term::One, Term::One) => true,
            (Term::Neg(a), Term::Neg(b)) => a.match_into(b, binding),
            (Term::Meet(a, b), Term::Meet(c, d))
            | (Term::Join(a, b), Term::Join(c, d))
            | (Term::W(a, b), Term::W(c, d))
            | (Term::Wstar(a, b), Term::Wstar(c, d)) => {
                a.match_into(c, binding) && b.match_into(d, binding)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.print_prec(f, 0)
    }
}

impl Term {
    // Precedence levels: 1 join, 2 meet, 3 prefix/atoms.
    fn print_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Var(v) => f.write_str(v),
            Term::Neg(t) => {
                f.write_str("~")?;
                t.print_prec(f, 3)
            }
            Term::Meet(l, r) => {
                let parens = min > 2;
                if parens {
                    f.write_str("(")?;
                }
                l.print_prec(f, 2)?;
                f.write_str(" & ")?;
                r.print_prec(f, 3)?;
                if parens {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Join(l, r) => {
                let parens = min > 1;
                if parens {
                    f.write_str("(")?;
                }
                l.print_prec(f, 1)?;
                f.write_str(" | ")?;
                r.print_prec(f, 2)?;
                if parens {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::W(l, r) => {
                if **l == Term::Zero {
                    write!(f, "w0({r})")
                } else {
                    write!(f, "w({l}, {r})")
                }
            }
            Term::Wstar(l, r) => {
                if **l == Term::Zero {
                    write!(f, "w0*({r})")
                } else {
                    write!(f, "w*({l}, {r})")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.free_vars();
        v.extend(self.rhs.free_vars());
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let t = p.parse_join()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let lhs = p.parse_join()?;
    p.skip_ws();
    if !p.eat(b'=') {
        return Err(p.err("expected '=' between equation sides"));
    }
    let rhs = p.parse_join()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(Equation { lhs, rhs })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn parse_join(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.parse_meet()?;
        while self.eat(b'|') {
            let rhs = self.parse_meet()?;
            acc = Term::join(acc, rhs);
        }
        Ok(acc)
    }

    fn parse_meet(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.parse_prefix()?;
        while self.eat(b'&') {
            let rhs = self.parse_prefix()?;
            acc = Term::meet(acc, rhs);
        }
        Ok(acc)
    }

    fn parse_prefix(&mut self) -> Result<Term, ParseError> {
        if self.eat(b'~') {
            return Ok(Term::neg(self.parse_prefix()?));
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.parse_join()?;
                self.expect(b')', "unmatched parenthesis")?;
                Ok(t)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.parse_ident(),
            Some(_) => Err(self.err("expected a term")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_ident(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut word =
            core::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
        // `w*` and `w0*` heads carry a star before the parenthesis.
        if (word == "w" || word == "w0") && self.src.get(self.pos) == Some(&b'*') {
            self.pos += 1;
            word.push('*');
        }
        let starts_call = self.src.get(self.pos) == Some(&b'(');
        match (word.as_str(), starts_call) {
            ("w", true) => {
                let (a, b) = self.parse_two_args()?;
                Ok(Term::w(a, b))
            }
            ("w*", true) => {
                let (a, b) = self.parse_two_args()?;
                Ok(Term::wstar(a, b))
            }
            ("R", true) => {
                let (a, b) = self.parse_two_args()?;
                Ok(Term::r(a, b))
            }
            ("mu", true) => {
                let (a, b) = self.parse_two_args()?;
                Ok(Term::mu(a, b))
            }
            ("ed", true) => {
                let a = self.parse_one_arg()?;
                Ok(Term::ed(a))
            }
            ("w0", true) => {
                let a = self.parse_one_arg()?;
                Ok(Term::w(Term::Zero, a))
            }
            ("w0*", true) => {
                let a = self.parse_one_arg()?;
                Ok(Term::wstar(Term::Zero, a))
            }
            ("w" | "w*" | "R" | "mu" | "ed" | "w0" | "w0*", false) => {
                self.pos = start;
                Err(self.err("reserved head requires an argument list"))
            }
            (_, _) => Ok(Term::Var(word)),
        }
    }

    fn parse_one_arg(&mut self) -> Result<Term, ParseError> {
        self.expect(b'(', "expected '('")?;
        let a = self.parse_join()?;
        self.expect(b')', "unmatched parenthesis")?;
        Ok(a)
    }

    fn parse_two_args(&mut self) -> Result<(Term, Term), ParseError> {
        self.expect(b'(', "expected '('")?;
        let a = self.parse_join()?;
        self.expect(b',', "expected ','")?;
        let b = self.parse_join()?;
        self.expect(b')', "unmatched parenthesis")?;
        Ok((a, b))
    }
}

/// A finite orthomodular lattice expanded with candidate tables for the
/// binary operations `w` and `w*`. The tables are total; nothing about
/// the defining equations is assumed.
#[derive(Clone, Debug)]
pub struct ExpandedStructure {
    base: FiniteOml,
    /// `w[z * n + x] = w(z, x)`.
    w: Vec<usize>,
    wstar: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableError {
    pub what: &'static str,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad operation table: {}", self.what)
    }
}

impl core::error::Error for TableError {}

impl ExpandedStructure {
    pub fn new(base: FiniteOml, w: Vec<usize>, wstar: Vec<usize>) -> Result<Self, TableError> {
        let n = base.len();
        if w.len() != n * n || wstar.len() != n * n {
            return Err(TableError { what: "tables must be n*n" });
        }
        if w.iter().chain(wstar.iter()).any(|&v| v >= n) {
            return Err(TableError { what: "table entry out of range" });
        }
        Ok(ExpandedStructure { base, w, wstar })
    }

    pub fn base(&self) -> &FiniteOml {
        &self.base
    }

    #[inline]
    pub fn w(&self, z: usize, x: usize) -> usize {
        self.w[z * self.base.len() + x]
    }

    #[inline]
    pub fn wstar(&self, z: usize, x: usize) -> usize {
        self.wstar[z * self.base.len() + x]
    }

    pub fn w_table(&self) -> &[usize] {
        &self.w
    }

    pub fn wstar_table(&self) -> &[usize] {
        &self.wstar
    }
}

/// Evaluation target: a bare lattice rejects `w`/`w*` terms.
#[derive(Clone, Copy)]
pub enum Structure<'a> {
    Oml(&'a FiniteOml),
    Expanded(&'a ExpandedStructure),
}

impl<'a> Structure<'a> {
    pub fn lattice(&self) -> &'a FiniteOml {
        match self {
            Structure::Oml(l) => l,
            Structure::Expanded(s) => s.base(),
        }
    }
}

impl<'a> From<&'a FiniteOml> for Structure<'a> {
    fn from(l: &'a FiniteOml) -> Self {
        Structure::Oml(l)
    }
}

impl<'a> From<&'a ExpandedStructure> for Structure<'a> {
    fn from(s: &'a ExpandedStructure) -> Self {
        Structure::Expanded(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(String),
    SignatureError,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(v) => write!(f, "unbound variable {v}"),
            EvalError::SignatureError => {
                write!(f, "w/w* term evaluated against a bare lattice")
            }
        }
    }
}

impl core::error::Error for EvalError {}

pub type Valuation = BTreeMap<String, usize>;

/// Homomorphic evaluation under a valuation.
pub fn eval(term: &Term, s: Structure<'_>, v: &Valuation) -> Result<usize, EvalError> {
    let l = s.lattice();
    Ok(match term {
        Term::Zero => l.bottom(),
        Term::One => l.top(),
        Term::Var(name) => {
            *v.get(name).ok_or_else(|| EvalError::UnboundVariable(name.clone()))?
        }
        Term::Neg(t) => l.neg(eval(t, s, v)?),
        Term::Meet(a, b) => l.meet(eval(a, s, v)?, eval(b, s, v)?),
        Term::Join(a, b) => l.join(eval(a, s, v)?, eval(b, s, v)?),
        Term::W(a, b) => match s {
            Structure::Oml(_) => return Err(EvalError::SignatureError),
            Structure::Expanded(e) => e.w(eval(a, s, v)?, eval(b, s, v)?),
        },
        Term::Wstar(a, b) => match s {
            Structure::Oml(_) => return Err(EvalError::SignatureError),
            Structure::Expanded(e) => e.wstar(eval(a, s, v)?, eval(b, s, v)?),
        },
    })
}

/// Evaluation with variables resolved to slots of `assignment`, avoiding
/// map lookups in exhaustive searches.
pub fn eval_slots(
    term: &Term,
    s: Structure<'_>,
    slots: &BTreeMap<&str, usize>,
    assignment: &[usize],
) -> Result<usize, EvalError> {
    let l = s.lattice();
    Ok(match term {
        Term::Zero => l.bottom(),
        Term::One => l.top(),
        Term::Var(name) => {
            assignment[*slots
                .get(name.as_str())
                .ok_or_else(|| EvalError::UnboundVariable(name.clone()))?]
        }
        Term::Neg(t) => l.neg(eval_slots(t, s, slots, assignment)?),
        Term::Meet(a, b) => {
            l.meet(eval_slots(a, s, slots, assignment)?, eval_slots(b, s, slots, assignment)?)
        }
        Term::Join(a, b) => {
            l.join(eval_slots(a, s, slots, assignment)?, eval_slots(b, s, slots, assignment)?)
        }
        Term::W(a, b) => match s {
            Structure::Oml(_) => return Err(EvalError::SignatureError),
            Structure::Expanded(e) => {
                e.w(eval_slots(a, s, slots, assignment)?, eval_slots(b, s, slots, assignment)?)
            }
        },
        Term::Wstar(a, b) => match s {
            Structure::Oml(_) => return Err(EvalError::SignatureError),
            Structure::Expanded(e) => e.wstar(
                eval_slots(a, s, slots, assignment)?,
                eval_slots(b, s, slots, assignment)?,
            ),
        },
    })
}

/// Exhaustive check of an equation; the first counter-valuation in
/// lexicographic order (variables sorted by name, last varying fastest)
/// is returned if the equation fails.
pub fn holds(s: Structure<'_>, eq: &Equation) -> Result<Option<Valuation>, EvalError> {
    let vars: Vec<String> = eq.free_vars().into_iter().collect();
    let slots: BTreeMap<&str, usize> =
        vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let n = s.lattice().len();
    let mut assignment = alloc::vec![0usize; vars.len()];
    loop {
        let lv = eval_slots(&eq.lhs, s, &slots, &assignment)?;
        let rv = eval_slots(&eq.rhs, s, &slots, &assignment)?;
        if lv != rv {
            return Ok(Some(
                vars.iter().cloned().zip(assignment.iter().copied()).collect(),
            ));
        }
        // Odometer step.
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oml::build;
    use proptest::prelude::*;

    #[test]
    fn r_macro_expands() {
        let t = parse("R(x,y)").unwrap();
        let expected = Term::join(
            Term::meet(Term::var("x"), Term::var("y")),
            Term::meet(Term::neg(Term::var("x")), Term::neg(Term::var("y"))),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn ed_macro_expands() {
        let t = parse("ed(t)").unwrap();
        assert_eq!(t, Term::neg(Term::w(Term::Zero, Term::neg(Term::var("t")))));
    }

    #[test]
    fn other_macros() {
        assert_eq!(parse("w0(t)").unwrap(), Term::w(Term::Zero, Term::var("t")));
        assert_eq!(parse("w0*(t)").unwrap(), Term::wstar(Term::Zero, Term::var("t")));
        assert_eq!(
            parse("mu(z,x)").unwrap(),
            Term::meet(Term::var("z"), Term::join(Term::neg(Term::var("z")), Term::var("x")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("a | b & c").unwrap(),
            Term::join(Term::var("a"), Term::meet(Term::var("b"), Term::var("c")))
        );
        assert_eq!(
            parse("a & b & c").unwrap(),
            Term::meet(Term::meet(Term::var("a"), Term::var("b")), Term::var("c"))
        );
        assert_eq!(
            parse("a | b | c").unwrap(),
            Term::join(Term::join(Term::var("a"), Term::var("b")), Term::var("c"))
        );
        assert_eq!(parse("~a & b").unwrap(), Term::meet(Term::neg(Term::var("a")), Term::var("b")));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("x & (y").unwrap_err();
        assert!(err.message.contains("paren"));
        assert!(parse("x $ y").is_err());
        assert!(parse("w").is_err());
    }

    #[test]
    fn print_resugars_w0() {
        let t = parse("w(0, x) & w*(0, y)").unwrap();
        assert_eq!(t.to_string(), "w0(x) & w0*(y)");
        assert_eq!(parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn substitution() {
        let t = parse("R(t,s)").unwrap();
        let mut m = BTreeMap::new();
        m.insert("t".to_string(), parse("a&b").unwrap());
        m.insert("s".to_string(), parse("a&b").unwrap());
        let u = t.substitute(&m);
        assert_eq!(u, Term::r(parse("a&b").unwrap(), parse("a&b").unwrap()));

        assert_eq!(Term::var("x").substitute(&BTreeMap::new()), Term::var("x"));

        let w = parse("w(z,x)").unwrap();
        let mut m = BTreeMap::new();
        m.insert("z".to_string(), Term::Zero);
        let w0 = w.substitute(&m);
        assert_eq!(w0, Term::w(Term::Zero, Term::var("x")));
        assert_eq!(w0.to_string(), "w0(x)");
    }

    #[test]
    fn eval_basics() {
        let l = build::mo(2);
        let s = Structure::Oml(&l);
        for x in 0..l.len() {
            let mut v = Valuation::new();
            v.insert("x".into(), x);
            assert_eq!(eval(&parse("x | ~x").unwrap(), s, &v).unwrap(), l.top());
            assert_eq!(eval(&parse("R(x,x)").unwrap(), s, &v).unwrap(), l.top());
        }
        let mut v = Valuation::new();
        v.insert("a".into(), l.index_of("a1").unwrap());
        assert_eq!(eval(&parse("mu(a, ~a)").unwrap(), s, &v).unwrap(), l.bottom());

        assert_eq!(
            eval(&parse("w0(x)").unwrap(), s, &v),
            Err(EvalError::SignatureError)
        );
        assert_eq!(
            eval(&parse("q").unwrap(), s, &v),
            Err(EvalError::UnboundVariable("q".into()))
        );
    }

    #[test]
    fn holds_distributivity() {
        let b = build::boolean(2);
        let eq = parse_equation("x&(y|z) = (x&y)|(x&z)").unwrap();
        assert_eq!(holds(Structure::Oml(&b), &eq).unwrap(), None);

        let l = build::mo(2);
        let counter = holds(Structure::Oml(&l), &eq).unwrap().unwrap();
        // First counter-valuation: x = a1, y = a1', z = a2.
        assert_eq!(counter["x"], l.index_of("a1").unwrap());
        assert_eq!(counter["y"], l.index_of("a1'").unwrap());
        assert_eq!(counter["z"], l.index_of("a2").unwrap());

        let refl = parse_equation("w(x,y)|z = w(x,y)|z").unwrap();
        let tables = alloc::vec![0usize; l.len() * l.len()];
        let e = ExpandedStructure::new(l.clone(), tables.clone(), tables).unwrap();
        assert_eq!(holds(Structure::Expanded(&e), &refl).unwrap(), None);
    }

    fn term_strategy() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::Zero),
            Just(Term::One),
            prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Term::var),
        ];
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::neg),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::w(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::wstar(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(t in term_strategy()) {
            let printed = t.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(reparsed, t);
        }

        #[test]
        fn substitution_commutes_with_eval(
            t in term_strategy(),
            m_terms in proptest::collection::vec(term_strategy(), 3),
            base in proptest::collection::vec(0usize..6, 3),
        ) {
            // eval(t[m], v) = eval(t, v') with v'(x) = eval(m(x), v).
            let l = build::mo(2);
            let n = l.len();
            let mut w = alloc::vec![0usize; n * n];
            let mut wstar = alloc::vec![0usize; n * n];
            for z in 0..n {
                for x in 0..n {
                    w[z * n + x] = l.sasaki(z, x);
                    wstar[z * n + x] = l.meet(z, x);
                }
            }
            let e = ExpandedStructure::new(l.clone(), w, wstar).unwrap();
            let s = Structure::Expanded(&e);

            let names = ["x", "y", "z"];
            let v: Valuation =
                names.iter().zip(&base).map(|(n, &b)| (n.to_string(), b)).collect();
            let mut subst = BTreeMap::new();
            let mut v_prime = Valuation::new();
            for (name, m_term) in names.iter().zip(m_terms) {
                v_prime.insert(name.to_string(), eval(&m_term, s, &v).unwrap());
                subst.insert(name.to_string(), m_term);
            }
            let lhs = eval(&t.substitute(&subst), s, &v).unwrap();
            let rhs = eval(&t, s, &v_prime).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
