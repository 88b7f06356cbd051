//! Hilbert-style calculus: axiom schemas A0a/A0b and A1..A33, the two
//! inference rules DS (disjunctive syllogism) and N (necessitation), proof
//! objects with a deterministic checker, derived-rule macros expanding to
//! primitive fragments, and the admissible deduction step.
//!
//! Terms are matched by structural tree equality; the checker recovers
//! axiom substitutions by pattern matching, so proofs never need to spell
//! them out.

use crate::term::{parse, Term};
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Axiom identifiers. A0 is stored as two schemas since the source lists a
/// join form and a meet form under one label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    A0a,
    A0b,
    A(u8),
}

impl AxiomId {
    pub const ALL: [AxiomId; 35] = {
        let mut all = [AxiomId::A0a; 35];
        all[1] = AxiomId::A0b;
        let mut i = 1u8;
        while i <= 33 {
            all[(i + 1) as usize] = AxiomId::A(i);
            i += 1;
        }
        all
    };

    /// Schemas of the orthomodular fragment (no w/w* symbols).
    pub fn is_oml_fragment(&self) -> bool {
        matches!(self, AxiomId::A0a | AxiomId::A0b) || matches!(self, AxiomId::A(k) if *k <= 13)
    }

    pub fn parse_id(s: &str) -> Option<AxiomId> {
        match s {
            "A0a" => Some(AxiomId::A0a),
            "A0b" => Some(AxiomId::A0b),
            _ => {
                let rest = s.strip_prefix('A')?;
                let k: u8 = rest.parse().ok()?;
                if (1..=33).contains(&k) {
                    Some(AxiomId::A(k))
                } else {
                    None
                }
            }
        }
    }

    /// Surface syntax of the schema; metavariables are drawn from
    /// `{t, s, r, x, y, z}` and bind whole subtrees.
    pub fn surface(&self) -> &'static str {
        match self {
            AxiomId::A0a => "R(t | ~t, 1)",
            AxiomId::A0b => "R(t & ~t, 0)",
            AxiomId::A(1) => "R(t, t)",
            AxiomId::A(2) => "~R(t,s) | (~R(s,r) | R(t,r))",
            AxiomId::A(3) => "~R(t,s) | R(~t, ~s)",
            AxiomId::A(4) => "~R(t,s) | R(t & r, s & r)",
            AxiomId::A(5) => "R(t & s, s & t)",
            AxiomId::A(6) => "R(t & (s & r), (t & s) & r)",
            AxiomId::A(7) => "R(t & (t | s), t)",
            AxiomId::A(8) => "R(~t & t, (~t & t) & s)",
            AxiomId::A(9) => "R(t, ~~t)",
            AxiomId::A(10) => "R(~(t | s), ~t & ~s)",
            AxiomId::A(11) => "R(t | (~t & (t | s)), t | s)",
            AxiomId::A(12) => "R(R(t,s), R(s,t))",
            AxiomId::A(13) => "~R(t,s) | (~t | s)",
            AxiomId::A(14) => "R(w0(0), 0)",
            AxiomId::A(15) => "R(x, x & w0(x))",
            AxiomId::A(16) => "R(y, (y & w0(x)) | (y & ~w0(x)))",
            AxiomId::A(17) => "R(w(z, x & y) | w(z, y), w(z, y))",
            AxiomId::A(18) => "R((w0(z) & w*(z, x & y)) | w*(z, y), w*(z, y))",
            AxiomId::A(19) => "R(w0*(z) & z, w0*(z) & w*(z, z))",
            AxiomId::A(20) => "R(w0*(z) & z, (~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z)))",
            AxiomId::A(21) => "R(w0*(z) | z, w0*(z) | w*(z, z))",
            AxiomId::A(22) => "R(w0*(z) | z, w0(w0*(z) | z))",
            AxiomId::A(23) => "R(w0(z), w0(z) & R(w(z, w*(z, x)), x))",
            AxiomId::A(24) => "R(w0(z), w0(z) & R(w*(z, w(z, x)), mu(z, x)))",
            AxiomId::A(25) => "R(w0(w0*(1)), w0(~w0*(1)))",
            AxiomId::A(26) => "R(w(x, y & w0(z)), w(x & w0(z), y & w0(z)))",
            AxiomId::A(27) => "R(w(x, y & w0(z)), w(x, y) & w0(z))",
            AxiomId::A(28) => "R(w*(x, y & w0(z)), w*(x & w0(z), y & w0(z)))",
            AxiomId::A(29) => "R(w*(x, y & w0(z)), w*(x, y) & w0(z))",
            AxiomId::A(30) => "~ed(R(t,s)) | R(w(r, t), w(r, s))",
            AxiomId::A(31) => "~ed(R(t,s)) | R(w(t, r), w(s, r))",
            AxiomId::A(32) => "~ed(R(t,s)) | R(w*(r, t), w*(r, s))",
            AxiomId::A(33) => "~ed(R(t,s)) | R(w*(t, r), w*(s, r))",
            AxiomId::A(_) => unreachable!(),
        }
    }

    /// The schema as a term over metavariables, macros expanded.
    pub fn pattern(&self) -> Term {
        parse(self.surface()).expect("axiom schemas parse")
    }

    pub fn metavariables(&self) -> Vec<String> {
        self.pattern().free_vars().into_iter().collect()
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::A0a => f.write_str("A0a"),
            AxiomId::A0b => f.write_str("A0b"),
            AxiomId::A(k) => write!(f, "A{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingMetavariable {
    pub axiom: AxiomId,
    pub metavariable: String,
}

impl fmt::Display for MissingMetavariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "instantiating {}: no binding for {}", self.axiom, self.metavariable)
    }
}

impl core::error::Error for MissingMetavariable {}

/// Replaces the schema's metavariables by the given terms.
pub fn instantiate_axiom(
    id: AxiomId,
    subst: &BTreeMap<String, Term>,
) -> Result<Term, MissingMetavariable> {
    let pattern = id.pattern();
    for mv in pattern.free_vars() {
        if !subst.contains_key(&mv) {
            return Err(MissingMetavariable { axiom: id, metavariable: mv });
        }
    }
    Ok(pattern.substitute(subst))
}

/// Derived rules from the corollary library. COR-7's source statement is
/// ambiguous and is deliberately not implemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedRule(pub u8);

impl DerivedRule {
    pub const IMPLEMENTED: [u8; 10] = [1, 2, 3, 4, 5, 6, 8, 9, 10, 11];

    pub fn parse_id(s: &str) -> Option<DerivedRule> {
        let rest = s.strip_prefix("COR-")?;
        let k: u8 = rest.parse().ok()?;
        if (1..=11).contains(&k) {
            Some(DerivedRule(k))
        } else {
            None
        }
    }
}

impl fmt::Display for DerivedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "COR-{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom { id: AxiomId },
    Hyp { index: usize },
    /// From step `minor` = t and step `major` = ~t | s, conclude s.
    Ds { minor: usize, major: usize },
    /// From step `from` = t, conclude ed(t).
    N { from: usize },
    Macro { rule: DerivedRule, inputs: Vec<usize>, params: Vec<Term> },
    /// Admissible deduction step: carries a full sub-proof of the step's
    /// right disjunct from the ambient theory plus `hypothesis`.
    Dt { hypothesis: Term, subproof: Box<Proof> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub term: Term,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Proof {
    pub theory: Vec<Term>,
    pub steps: Vec<ProofStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    NotAxiomInstance(AxiomId),
    HypIndexOutOfRange(usize),
    HypMismatch(usize),
    ForwardReference(usize),
    DsShapeMismatch,
    NShapeMismatch,
    MacroError(String),
    MacroConclusionMismatch,
    DtInStrictMode,
    DtSubproofBad(Box<Verdict>),
    DtShapeMismatch,
    EmptyProof,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::NotAxiomInstance(id) => write!(f, "term is not an instance of {id}"),
            Reason::HypIndexOutOfRange(i) => write!(f, "hypothesis index {i} out of range"),
            Reason::HypMismatch(i) => write!(f, "term differs from hypothesis {i}"),
            Reason::ForwardReference(i) => {
                write!(f, "reference to step {i} does not precede this step")
            }
            Reason::DsShapeMismatch => {
                write!(f, "DS shape mismatch: major premise must be ~minor | current")
            }
            Reason::NShapeMismatch => write!(f, "N shape mismatch: term must be ed(premise)"),
            Reason::MacroError(e) => write!(f, "macro expansion failed: {e}"),
            Reason::MacroConclusionMismatch => {
                write!(f, "macro conclusion differs from the step term")
            }
            Reason::DtInStrictMode => write!(f, "DT step rejected in strict mode"),
            Reason::DtSubproofBad(v) => match &v.first_bad_step {
                Some((i, r)) => write!(f, "DT subproof fails at step {i}: {r}"),
                None => write!(f, "DT subproof is empty"),
            },
            Reason::DtShapeMismatch => {
                write!(f, "DT term must be ~ed(hypothesis) | conclusion")
            }
            Reason::EmptyProof => write!(f, "proof has no steps"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub first_bad_step: Option<(usize, Reason)>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { ok: true, first_bad_step: None }
    }

    fn bad(step: usize, reason: Reason) -> Verdict {
        Verdict { ok: false, first_bad_step: Some((step, reason)) }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_bad_step {
            None => write!(f, "ok"),
            Some((i, r)) => write!(f, "bad step {i}: {r}"),
        }
    }
}

/// Recovers a substitution making the step an instance of the axiom.
pub fn match_axiom(id: AxiomId, term: &Term) -> Option<BTreeMap<String, Term>> {
    id.pattern().match_against(term)
}

/// Deterministic proof checking. With `strict` set, DT steps are rejected
/// so the primitive calculus stands alone; macro steps are always expanded
/// to primitive fragments and re-checked.
pub fn check_proof(proof: &Proof, strict: bool) -> Verdict {
    if proof.steps.is_empty() {
        return Verdict::bad(0, Reason::EmptyProof);
    }
    // Flattened list of verified terms; `positions[i]` locates original
    // step i in it (macro steps occupy a whole fragment).
    let mut flat: Vec<Term> = Vec::new();
    let mut positions: Vec<usize> = Vec::new();

    for (idx, step) in proof.steps.iter().enumerate() {
        let resolve = |i: usize| -> Result<usize, Reason> {
            if i >= idx {
                Err(Reason::ForwardReference(i))
            } else {
                Ok(positions[i])
            }
        };
        match &step.just {
            Justification::Axiom { id } => {
                if match_axiom(*id, &step.term).is_none() {
                    return Verdict::bad(idx, Reason::NotAxiomInstance(*id));
                }
            }
            Justification::Hyp { index } => match proof.theory.get(*index) {
                None => return Verdict::bad(idx, Reason::HypIndexOutOfRange(*index)),
                Some(h) if *h != step.term => {
                    return Verdict::bad(idx, Reason::HypMismatch(*index))
                }
                Some(_) => {}
            },
            Justification::Ds { minor, major } => {
                let (mi, ma) = match (resolve(*minor), resolve(*major)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(r), _) | (_, Err(r)) => return Verdict::bad(idx, r),
                };
                let expected_major = Term::join(Term::neg(flat[mi].clone()), step.term.clone());
                if flat[ma] != expected_major {
                    return Verdict::bad(idx, Reason::DsShapeMismatch);
                }
            }
            Justification::N { from } => {
                let fi = match resolve(*from) {
                    Ok(a) => a,
                    Err(r) => return Verdict::bad(idx, r),
                };
                if step.term != Term::ed(flat[fi].clone()) {
                    return Verdict::bad(idx, Reason::NShapeMismatch);
                }
            }
            Justification::Macro { rule, inputs, params } => {
                let mut input_terms = Vec::with_capacity(inputs.len());
                for &i in inputs {
                    match resolve(i) {
                        Ok(p) => input_terms.push(flat[p].clone()),
                        Err(r) => return Verdict::bad(idx, r),
                    }
                }
                let fragment = match expand_rule(*rule, &input_terms, params) {
                    Ok(f) => f,
                    Err(e) => return Verdict::bad(idx, Reason::MacroError(e.to_string())),
                };
                let base = flat.len();
                for (fi, fstep) in fragment.steps.iter().enumerate() {
                    if let Err(r) =
                        verify_fragment_step(&fragment, fi, base, &flat, &input_terms)
                    {
                        return Verdict::bad(idx, r);
                    }
                    flat.push(fstep.term.clone());
                }
                match fragment.steps.last() {
                    Some(last) if last.term == step.term => {}
                    _ => return Verdict::bad(idx, Reason::MacroConclusionMismatch),
                }
                positions.push(flat.len() - 1);
                continue;
            }
            Justification::Dt { hypothesis, subproof } => {
                if strict {
                    return Verdict::bad(idx, Reason::DtInStrictMode);
                }
                let mut inner = (**subproof).clone();
                inner.theory = proof.theory.clone();
                inner.theory.push(hypothesis.clone());
                let vd = check_proof(&inner, strict);
                if !vd.ok {
                    return Verdict::bad(idx, Reason::DtSubproofBad(Box::new(vd)));
                }
                let conclusion =
                    inner.steps.last().expect("checked proofs are nonempty").term.clone();
                let expected = Term::join(Term::neg(Term::ed(hypothesis.clone())), conclusion);
                if step.term != expected {
                    return Verdict::bad(idx, Reason::DtShapeMismatch);
                }
            }
        }
        positions.push(flat.len());
        flat.push(step.term.clone());
    }
    Verdict::pass()
}

/// Reference inside a fragment: a macro input or an earlier fragment step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FragRef {
    Input(usize),
    Step(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FragJust {
    Axiom(AxiomId),
    Ds(FragRef, FragRef),
    N(FragRef),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragStep {
    pub term: Term,
    pub just: FragJust,
}

/// A primitive proof fragment, the expansion of one derived-rule step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fragment {
    pub steps: Vec<FragStep>,
}

fn verify_fragment_step(
    fragment: &Fragment,
    fi: usize,
    base: usize,
    flat: &[Term],
    input_terms: &[Term],
) -> Result<(), Reason> {
    let lookup = |r: &FragRef| -> Result<Term, Reason> {
        match r {
            FragRef::Input(i) => input_terms
                .get(*i)
                .cloned()
                .ok_or_else(|| Reason::MacroError("missing macro input".to_string())),
            FragRef::Step(s) => {
                if *s >= fi {
                    Err(Reason::ForwardReference(*s))
                } else {
                    Ok(flat[base + s].clone())
                }
            }
        }
    };
    let step = &fragment.steps[fi];
    match &step.just {
        FragJust::Axiom(id) => {
            if match_axiom(*id, &step.term).is_none() {
                return Err(Reason::NotAxiomInstance(*id));
            }
        }
        FragJust::Ds(minor, major) => {
            let mi = lookup(minor)?;
            let ma = lookup(major)?;
            if ma != Term::join(Term::neg(mi), step.term.clone()) {
                return Err(Reason::DsShapeMismatch);
            }
        }
        FragJust::N(from) => {
            let t = lookup(from)?;
            if step.term != Term::ed(t) {
                return Err(Reason::NShapeMismatch);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleError {
    Unimplemented(DerivedRule),
    WrongInputCount { rule: DerivedRule, expected: usize, got: usize },
    WrongParamCount { rule: DerivedRule, expected: usize, got: usize },
    InputShape { rule: DerivedRule, detail: &'static str },
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleError::Unimplemented(r) => {
                write!(f, "{r} is not implemented (ambiguous source statement)")
            }
            RuleError::WrongInputCount { rule, expected, got } => {
                write!(f, "{rule} expects {expected} inputs, got {got}")
            }
            RuleError::WrongParamCount { rule, expected, got } => {
                write!(f, "{rule} expects {expected} parameters, got {got}")
            }
            RuleError::InputShape { rule, detail } => write!(f, "{rule}: {detail}"),
        }
    }
}

impl core::error::Error for RuleError {}

/// Splits a term of shape `(t & s) | (~t & ~s)` into `(t, s)`.
pub fn split_r(term: &Term) -> Option<(Term, Term)> {
    let pat = Term::r(Term::var("t"), Term::var("s"));
    let binding = pat.match_against(term)?;
    Some((binding["t"].clone(), binding["s"].clone()))
}

/// Builder for primitive fragments. The shape-manipulating helpers below
/// assume their callers pass steps of the right form and panic otherwise;
/// public entry points validate shapes before building.
struct Builder {
    frag: Fragment,
}

impl Builder {
    fn new() -> Builder {
        Builder { frag: Fragment::default() }
    }

    fn term(&self, r: FragRef, inputs: &[Term]) -> Term {
        match r {
            FragRef::Input(i) => inputs[i].clone(),
            FragRef::Step(s) => self.frag.steps[s].term.clone(),
        }
    }

    fn axiom(&mut self, id: AxiomId, subst: &[(&str, Term)]) -> FragRef {
        let map: BTreeMap<String, Term> =
            subst.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let term = instantiate_axiom(id, &map).expect("builder supplies full substitutions");
        self.frag.steps.push(FragStep { term, just: FragJust::Axiom(id) });
        FragRef::Step(self.frag.steps.len() - 1)
    }

    fn ds(&mut self, minor: FragRef, major: FragRef, inputs: &[Term]) -> FragRef {
        let major_term = self.term(major, inputs);
        let minor_term = self.term(minor, inputs);
        let s = match &major_term {
            Term::Join(neg_t, s) if **neg_t == Term::neg(minor_term) => (**s).clone(),
            _ => panic!("builder DS shape"),
        };
        self.frag.steps.push(FragStep { term: s, just: FragJust::Ds(minor, major) });
        FragRef::Step(self.frag.steps.len() - 1)
    }

    fn necessitate(&mut self, from: FragRef, inputs: &[Term]) -> FragRef {
        let t = self.term(from, inputs);
        self.frag.steps.push(FragStep { term: Term::ed(t), just: FragJust::N(from) });
        FragRef::Step(self.frag.steps.len() - 1)
    }

    /// From a proven `a R b`, derive the guarded form `~a | b`.
    fn unwrap_r(&mut self, r_step: FragRef, inputs: &[Term]) -> FragRef {
        let (a, b) = split_r(&self.term(r_step, inputs)).expect("unwrap_r input");
        let a13 = self.axiom(AxiomId::A(13), &[("t", a), ("s", b)]);
        self.ds(r_step, a13, inputs)
    }

    /// From proven `a R b` and `a`, conclude `b`.
    fn apply_r(&mut self, r_step: FragRef, a_step: FragRef, inputs: &[Term]) -> FragRef {
        let guarded = self.unwrap_r(r_step, inputs);
        self.ds(a_step, guarded, inputs)
    }

    /// From proven `a R b`, conclude `b R a`.
    fn reverse(&mut self, r_step: FragRef, inputs: &[Term]) -> FragRef {
        let (a, b) = split_r(&self.term(r_step, inputs)).expect("reverse input");
        let a12 = self.axiom(AxiomId::A(12), &[("t", a), ("s", b)]);
        self.apply_r(a12, r_step, inputs)
    }

    /// From proven `a R b` and `b R c`, conclude `a R c`.
    fn transitive(&mut self, ab: FragRef, bc: FragRef, inputs: &[Term]) -> FragRef {
        let (a, b) = split_r(&self.term(ab, inputs)).expect("transitive lhs");
        let (_, c) = split_r(&self.term(bc, inputs)).expect("transitive rhs");
        let a2 = self.axiom(AxiomId::A(2), &[("t", a), ("s", b), ("r", c)]);
        let step = self.ds(ab, a2, inputs);
        self.ds(bc, step, inputs)
    }

    /// From proven `a R b`, conclude `~a R ~b`.
    fn contrapose(&mut self, ab: FragRef, inputs: &[Term]) -> FragRef {
        let (a, b) = split_r(&self.term(ab, inputs)).expect("contrapose input");
        let a3 = self.axiom(AxiomId::A(3), &[("t", a), ("s", b)]);
        self.ds(ab, a3, inputs)
    }

    /// Proves `(a | b) R (b | a)` from scratch via De Morgan, meet
    /// commutativity and double negation.
    fn join_commutativity(&mut self, a: Term, b: Term, inputs: &[Term]) -> FragRef {
        let (na, nb) = (Term::neg(a.clone()), Term::neg(b.clone()));
        let s1 = self.axiom(AxiomId::A(10), &[("t", a.clone()), ("s", b.clone())]);
        let s2 = self.axiom(AxiomId::A(5), &[("t", na), ("s", nb)]);
        let s3 = self.transitive(s1, s2, inputs);
        let s4 = self.axiom(AxiomId::A(10), &[("t", b.clone()), ("s", a.clone())]);
        let s5 = self.reverse(s4, inputs);
        let s6 = self.transitive(s3, s5, inputs);
        let s7 = self.contrapose(s6, inputs);
        let ab = Term::join(a.clone(), b.clone());
        let ba = Term::join(b, a);
        let s8 = self.axiom(AxiomId::A(9), &[("t", ab)]);
        let s9 = self.transitive(s8, s7, inputs);
        let s10 = self.axiom(AxiomId::A(9), &[("t", ba)]);
        let s11 = self.reverse(s10, inputs);
        self.transitive(s9, s11, inputs)
    }

    /// Proves `t | ~t`. The A1/A13 route yields `~t | t`; a derived join
    /// commutation brings it to the stated orientation.
    fn excluded_middle(&mut self, t: Term, inputs: &[Term]) -> FragRef {
        let a1 = self.axiom(AxiomId::A(1), &[("t", t.clone())]);
        let nt_t = self.unwrap_r(a1, inputs);
        let comm = self.join_commutativity(Term::neg(t.clone()), t, inputs);
        self.apply_r(comm, nt_t, inputs)
    }
}

/// Expands a derived rule into a primitive fragment specialized to the
/// given input terms; the host checker re-validates the expansion.
pub fn expand_rule(
    rule: DerivedRule,
    inputs: &[Term],
    params: &[Term],
) -> Result<Fragment, RuleError> {
    let need_inputs = |n: usize| {
        if inputs.len() != n {
            Err(RuleError::WrongInputCount { rule, expected: n, got: inputs.len() })
        } else {
            Ok(())
        }
    };
    let need_params = |n: usize| {
        if params.len() != n {
            Err(RuleError::WrongParamCount { rule, expected: n, got: params.len() })
        } else {
            Ok(())
        }
    };
    let r_input = |i: usize| {
        split_r(&inputs[i]).ok_or(RuleError::InputShape {
            rule,
            detail: "input must have the shape t R s",
        })
    };
    let mut b = Builder::new();
    match rule.0 {
        1 => {
            need_inputs(0)?;
            need_params(1)?;
            b.excluded_middle(params[0].clone(), inputs);
        }
        2 => {
            need_inputs(0)?;
            need_params(1)?;
            let t = params[0].clone();
            let lem = b.excluded_middle(t.clone(), inputs);
            let a0 = b.axiom(AxiomId::A0a, &[("t", t)]);
            b.apply_r(a0, lem, inputs);
        }
        3 => {
            need_inputs(1)?;
            need_params(0)?;
            r_input(0)?;
            b.reverse(FragRef::Input(0), inputs);
        }
        4 => {
            need_inputs(2)?;
            need_params(0)?;
            let (_, s1) = r_input(0)?;
            let (s2, _) = r_input(1)?;
            if s1 != s2 {
                return Err(RuleError::InputShape {
                    rule,
                    detail: "inputs must share the middle term: t R s and s R r",
                });
            }
            b.transitive(FragRef::Input(0), FragRef::Input(1), inputs);
        }
        5 => {
            need_inputs(1)?;
            need_params(0)?;
            r_input(0)?;
            b.contrapose(FragRef::Input(0), inputs);
        }
        6 => {
            need_inputs(2)?;
            need_params(0)?;
            let (t, s) = r_input(0)?;
            let (t2, r) = match &inputs[1] {
                Term::Meet(a, c) => ((**a).clone(), (**c).clone()),
                _ => {
                    return Err(RuleError::InputShape {
                        rule,
                        detail: "second input must have the shape t & r",
                    })
                }
            };
            if t2 != t {
                return Err(RuleError::InputShape {
                    rule,
                    detail: "second input's left conjunct must match the R premise",
                });
            }
            let a4 = b.axiom(AxiomId::A(4), &[("t", t), ("s", s), ("r", r)]);
            let meets = b.ds(FragRef::Input(0), a4, inputs);
            b.apply_r(meets, FragRef::Input(1), inputs);
        }
        7 => return Err(RuleError::Unimplemented(rule)),
        8..=11 => {
            need_inputs(1)?;
            need_params(1)?;
            let (t, s) = r_input(0)?;
            let r = params[0].clone();
            let ed = b.necessitate(FragRef::Input(0), inputs);
            let axiom = match rule.0 {
                8 => AxiomId::A(30),
                9 => AxiomId::A(31),
                10 => AxiomId::A(32),
                _ => AxiomId::A(33),
            };
            let ax = b.axiom(axiom, &[("t", t), ("s", s), ("r", r)]);
            b.ds(ed, ax, inputs);
        }
        _ => return Err(RuleError::Unimplemented(rule)),
    }
    Ok(b.frag)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionError(pub Verdict);

impl fmt::Display for DeductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "supplied proof is not ok: {}", self.0)
    }
}

impl core::error::Error for DeductionError {}

/// The admissible deduction step: from a checked proof of `t` from
/// `theory + [hypothesis]`, emits a DT-justified step `~ed(hypothesis) | t`.
pub fn deduction_step(
    theory: &[Term],
    hypothesis: &Term,
    subproof: &Proof,
) -> Result<ProofStep, DeductionError> {
    let mut inner = subproof.clone();
    inner.theory = theory.to_vec();
    inner.theory.push(hypothesis.clone());
    let vd = check_proof(&inner, true);
    if !vd.ok {
        return Err(DeductionError(vd));
    }
    let conclusion = inner.steps.last().expect("nonempty checked proof").term.clone();
    Ok(ProofStep {
        term: Term::join(Term::neg(Term::ed(hypothesis.clone())), conclusion),
        just: Justification::Dt {
            hypothesis: hypothesis.clone(),
            subproof: Box::new(subproof.clone()),
        },
    })
}

/// Converts a standalone fragment into a checkable proof, prefixing `Hyp`
/// steps that the fragment's `Input` references resolve against.
pub fn fragment_to_proof(theory: Vec<Term>, hyp_steps: &[Term], frag: Fragment) -> Proof {
    let offset = hyp_steps.len();
    let mut steps: Vec<ProofStep> = hyp_steps
        .iter()
        .enumerate()
        .map(|(i, t)| ProofStep { term: t.clone(), just: Justification::Hyp { index: i } })
        .collect();
    for f in frag.steps {
        let conv = |r: &FragRef| match r {
            FragRef::Input(i) => *i,
            FragRef::Step(s) => offset + s,
        };
        let just = match &f.just {
            FragJust::Axiom(id) => Justification::Axiom { id: *id },
            FragJust::Ds(a, b) => Justification::Ds { minor: conv(a), major: conv(b) },
            FragJust::N(a) => Justification::N { from: conv(a) },
        };
        steps.push(ProofStep { term: f.term, just });
    }
    Proof { theory, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;
    use alloc::vec;

    fn subst(pairs: &[(&str, &str)]) -> BTreeMap<String, Term> {
        pairs.iter().map(|(k, v)| (k.to_string(), parse(v).unwrap())).collect()
    }

    #[test]
    fn instantiate_examples() {
        let a1 = instantiate_axiom(AxiomId::A(1), &subst(&[("t", "a")])).unwrap();
        assert_eq!(a1, parse("R(a,a)").unwrap());

        let a14 = instantiate_axiom(AxiomId::A(14), &BTreeMap::new()).unwrap();
        assert_eq!(a14, parse("R(w0(0), 0)").unwrap());

        let a30 =
            instantiate_axiom(AxiomId::A(30), &subst(&[("t", "a"), ("s", "b"), ("r", "c")]))
                .unwrap();
        assert_eq!(a30, parse("~ed(R(a,b)) | R(w(c,a), w(c,b))").unwrap());

        let missing = instantiate_axiom(AxiomId::A(2), &subst(&[("t", "a"), ("s", "b")]));
        assert!(missing.is_err());
    }

    #[test]
    fn axiom_matching_recovers_substitutions() {
        for id in AxiomId::ALL {
            let mvs = id.metavariables();
            let sub: BTreeMap<String, Term> = mvs
                .iter()
                .enumerate()
                .map(|(i, mv)| (mv.clone(), parse(&alloc::format!("q{i} & ~q{i}")).unwrap()))
                .collect();
            let inst = instantiate_axiom(id, &sub).unwrap();
            let recovered = match_axiom(id, &inst).expect("instance matches its schema");
            assert_eq!(recovered, sub, "{id}");
        }
        assert!(match_axiom(AxiomId::A(1), &parse("R(a,b)").unwrap()).is_none());
    }

    #[test]
    fn cor2_five_step_proof_checks() {
        // (1) t | ~t via COR-1; (2) (t|~t) R 1 by A0; (3) A13; (4) DS; (5) 1.
        let t = parse("a").unwrap();
        let lem = Term::join(t.clone(), Term::neg(t.clone()));
        let proof = Proof {
            theory: vec![],
            steps: vec![
                ProofStep {
                    term: lem.clone(),
                    just: Justification::Macro {
                        rule: DerivedRule(1),
                        inputs: vec![],
                        params: vec![t.clone()],
                    },
                },
                ProofStep {
                    term: Term::r(lem.clone(), Term::One),
                    just: Justification::Axiom { id: AxiomId::A0a },
                },
                ProofStep {
                    term: Term::join(
                        Term::neg(Term::r(lem.clone(), Term::One)),
                        Term::join(Term::neg(lem.clone()), Term::One),
                    ),
                    just: Justification::Axiom { id: AxiomId::A(13) },
                },
                ProofStep {
                    term: Term::join(Term::neg(lem.clone()), Term::One),
                    just: Justification::Ds { minor: 1, major: 2 },
                },
                ProofStep { term: Term::One, just: Justification::Ds { minor: 0, major: 3 } },
            ],
        };
        assert!(check_proof(&proof, true).ok);

        // Deleting the fourth step must break the final DS.
        let mut mutated = proof.clone();
        mutated.steps.remove(3);
        let vd = check_proof(&mutated, true);
        assert!(!vd.ok);
        assert_eq!(vd.first_bad_step.as_ref().unwrap().0, 3);
    }

    #[test]
    fn cor3_reversal_proof_checks() {
        let frag = expand_rule(DerivedRule(3), &[parse("R(a,b)").unwrap()], &[]).unwrap();
        assert_eq!(frag.steps.last().unwrap().term, parse("R(b,a)").unwrap());
        let proof =
            fragment_to_proof(vec![parse("R(a,b)").unwrap()], &[parse("R(a,b)").unwrap()], frag);
        assert!(check_proof(&proof, true).ok);
    }

    #[test]
    fn cor8_fragment() {
        let frag =
            expand_rule(DerivedRule(8), &[parse("R(a,b)").unwrap()], &[parse("c").unwrap()])
                .unwrap();
        // N, A30 instance, DS.
        assert_eq!(frag.steps.len(), 3);
        assert!(matches!(frag.steps[0].just, FragJust::N(_)));
        assert!(matches!(frag.steps[1].just, FragJust::Axiom(AxiomId::A(30))));
        assert_eq!(frag.steps.last().unwrap().term, parse("R(w(c,a), w(c,b))").unwrap());

        let err = expand_rule(DerivedRule(8), &[parse("a&b").unwrap()], &[parse("c").unwrap()]);
        assert!(matches!(err, Err(RuleError::InputShape { .. })));
    }

    #[test]
    fn cor7_unimplemented() {
        let err = expand_rule(DerivedRule(7), &[], &[]);
        assert!(matches!(err, Err(RuleError::Unimplemented(_))));
    }

    #[test]
    fn deduction_step_cases() {
        // Hypothesis case: a from {a}.
        let a = parse("a").unwrap();
        let sub = Proof {
            theory: vec![],
            steps: vec![ProofStep { term: a.clone(), just: Justification::Hyp { index: 0 } }],
        };
        let step = deduction_step(&[], &a, &sub).unwrap();
        assert_eq!(step.term, parse("~ed(a) | a").unwrap());

        // Primitive proof of 1 under a vacuous hypothesis.
        let frag = expand_rule(DerivedRule(2), &[], &[parse("b").unwrap()]).unwrap();
        let one_proof = fragment_to_proof(vec![], &[], frag);
        let step = deduction_step(&[], &a, &one_proof).unwrap();
        assert_eq!(step.term, parse("~ed(a) | 1").unwrap());

        // DT steps verify non-strictly and are rejected strictly.
        let dt_proof = Proof { theory: vec![], steps: vec![step] };
        assert!(check_proof(&dt_proof, false).ok);
        let vd = check_proof(&dt_proof, true);
        assert_eq!(vd.first_bad_step.unwrap().1, Reason::DtInStrictMode);

        // A broken subproof is rejected.
        let bad = Proof {
            theory: vec![],
            steps: vec![ProofStep {
                term: parse("q").unwrap(),
                just: Justification::Hyp { index: 0 },
            }],
        };
        assert!(deduction_step(&[], &a, &bad).is_err());
    }

    #[test]
    fn macro_transparency() {
        // A proof using COR-4 verifies iff its primitive expansion does.
        let t1 = parse("R(a,b)").unwrap();
        let t2 = parse("R(b,c)").unwrap();
        let conclusion = parse("R(a,c)").unwrap();
        let with_macro = Proof {
            theory: vec![t1.clone(), t2.clone()],
            steps: vec![
                ProofStep { term: t1.clone(), just: Justification::Hyp { index: 0 } },
                ProofStep { term: t2.clone(), just: Justification::Hyp { index: 1 } },
                ProofStep {
                    term: conclusion.clone(),
                    just: Justification::Macro {
                        rule: DerivedRule(4),
                        inputs: vec![0, 1],
                        params: vec![],
                    },
                },
            ],
        };
        assert!(check_proof(&with_macro, true).ok);

        let frag = expand_rule(DerivedRule(4), &[t1.clone(), t2.clone()], &[]).unwrap();
        let expanded = fragment_to_proof(vec![t1.clone(), t2.clone()], &[t1, t2], frag);
        assert!(check_proof(&expanded, true).ok);
        assert_eq!(expanded.steps.last().unwrap().term, conclusion);
    }

    #[test]
    fn determinism_and_reference_errors() {
        let t1 = parse("R(a,b)").unwrap();
        let mut proof = Proof {
            theory: vec![t1.clone()],
            steps: vec![
                ProofStep { term: t1, just: Justification::Hyp { index: 0 } },
                ProofStep {
                    term: parse("R(b,a)").unwrap(),
                    just: Justification::Ds { minor: 0, major: 0 },
                },
            ],
        };
        let v1 = check_proof(&proof, true);
        let v2 = check_proof(&proof, true);
        assert_eq!(v1, v2);
        assert_eq!(v1.first_bad_step.as_ref().unwrap().0, 1);
        proof.steps[1].just = Justification::Ds { minor: 0, major: 5 };
        let v3 = check_proof(&proof, true);
        assert!(matches!(v3.first_bad_step.unwrap().1, Reason::ForwardReference(_)));
    }
}
