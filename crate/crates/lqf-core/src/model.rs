//! Finite-model services: the lattice catalog, the LQF and type-III
//! condition checkers, the finite refuter, the two-variable decision
//! procedure backed by a computed free algebra, and countermodel search.

use crate::oml::{build, FiniteOml};
use crate::term::{
    eval_slots, holds, parse_equation, Equation, EvalError, ExpandedStructure, Structure,
    Valuation,
};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Named test universe. Every entry passes lattice verification by
/// construction; the mix covers Boolean, non-Boolean modular, non-modular
/// and decomposable cases at sizes 2..24.
pub struct Catalog {
    entries: Vec<(String, FiniteOml)>,
}

impl Catalog {
    pub fn standard() -> Catalog {
        let b1 = build::boolean(1);
        let b2 = build::boolean(2);
        let b3 = build::boolean(3);
        let mo2 = build::mo(2);
        let entries = vec![
            ("boolean1".to_string(), b1.clone()),
            ("boolean2".to_string(), b2.clone()),
            ("boolean3".to_string(), b3.clone()),
            ("boolean4".to_string(), build::boolean(4)),
            ("mo1".to_string(), build::mo(1)),
            ("mo2".to_string(), mo2.clone()),
            ("mo3".to_string(), build::mo(3)),
            ("mo4".to_string(), build::mo(4)),
            ("b1xmo2".to_string(), build::product(&b1, &mo2)),
            ("b2xmo2".to_string(), build::product(&b2, &mo2)),
            ("hs_b3_b2".to_string(), build::horizontal_sum(&b3, &b2)),
            ("hs_b3_b3".to_string(), build::horizontal_sum(&b3, &b3)),
        ];
        Catalog { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &FiniteOml)> {
        self.entries.iter().map(|(n, l)| (n.as_str(), l))
    }

    pub fn get(&self, name: &str) -> Option<&FiniteOml> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn at_most(&self, max_size: usize) -> impl Iterator<Item = (&str, &FiniteOml)> {
        self.entries().filter(move |(_, l)| l.len() <= max_size)
    }

    pub fn directly_indecomposable(&self) -> impl Iterator<Item = (&str, &FiniteOml)> {
        self.entries().filter(|(_, l)| l.is_directly_indecomposable())
    }
}

/// One universally quantified condition, possibly split into several
/// equations (checked in order). Inequalities are pre-normalised to
/// `u = u & v`.
#[derive(Clone, Debug)]
pub struct Condition {
    pub label: String,
    pub index: u8,
    pub equations: Vec<Equation>,
}

fn condition(label: &str, index: u8, eqs: &[&str]) -> Condition {
    Condition {
        label: label.to_string(),
        index,
        equations: eqs.iter().map(|e| parse_equation(e).expect("condition parses")).collect(),
    }
}

/// The defining conditions of the expanded algebras, LQF1..LQF12.
pub fn lqf_conditions() -> Vec<Condition> {
    vec![
        condition("LQF1", 1, &["w0(0) = 0"]),
        condition("LQF2", 2, &["x = x & w0(x)"]),
        condition("LQF3", 3, &["y = (y & w0(x)) | (y & ~w0(x))"]),
        condition("LQF4", 4, &["w(z, x & y) = w(z, x & y) & w(z, y)"]),
        condition("LQF5", 5, &["w0(z) & w*(z, x & y) = (w0(z) & w*(z, x & y)) & w*(z, x)"]),
        condition(
            "LQF6",
            6,
            &[
                "w0*(z) & z = w0*(z) & w*(z, z)",
                "w0*(z) & z = (~w0(~z) & w0*(z)) | (w0(~z) & w0(w0*(z) & z))",
            ],
        ),
        condition("LQF7", 7, &["w0*(z) | z = w0*(z) | w*(z, z)", "w0*(z) | z = w0(w0*(z) | z)"]),
        condition("LQF8", 8, &["w0(z) = w0(z) & R(w(z, w*(z, x)), x)"]),
        condition("LQF9", 9, &["w0(z) = w0(z) & R(w*(z, w(z, x)), mu(z, x))"]),
        condition("LQF10", 10, &["w0(w0*(1)) = w0(~w0*(1))"]),
        condition(
            "LQF11",
            11,
            &["w(x, y & w0(z)) = w(x & w0(z), y & w0(z))", "w(x, y & w0(z)) = w(x, y) & w0(z)"],
        ),
        condition(
            "LQF12",
            12,
            &["w*(x, y & w0(z)) = w*(x & w0(z), y & w0(z))", "w*(x, y & w0(z)) = w*(x, y) & w0(z)"],
        ),
    ]
}

/// The ten conditions characterising the type-III situation; they mirror
/// LQF1..LQF10 except that the fourth bounds by the left argument of the
/// meet.
pub fn iii_conditions() -> Vec<Condition> {
    let mut conds = lqf_conditions();
    conds.truncate(10);
    for c in &mut conds {
        c.label = format!("III{}", c.index);
    }
    conds[3] = condition("III4", 4, &["w(z, x & y) = w(z, x & y) & w(z, x)"]);
    conds
}

/// The two compatibility identities for meets against `w0`-images, each
/// in its two-equation form; validated separately by the III checker.
pub fn compatibility_conditions() -> Vec<Condition> {
    lqf_conditions().split_off(10)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure {
    pub label: String,
    pub index: u8,
    /// Which sub-equation failed (0-based).
    pub equation: usize,
    pub witness: Valuation,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails (equation {}) at {:?}", self.label, self.equation, self.witness)
    }
}

fn check_conditions(
    s: &ExpandedStructure,
    conds: &[Condition],
) -> Result<Option<ConditionFailure>, EvalError> {
    for c in conds {
        for (k, eq) in c.equations.iter().enumerate() {
            if let Some(witness) = holds(Structure::Expanded(s), eq)? {
                return Ok(Some(ConditionFailure {
                    label: c.label.clone(),
                    index: c.index,
                    equation: k,
                    witness,
                }));
            }
        }
    }
    Ok(None)
}

/// Evaluates LQF1..LQF12 on a candidate structure; `None` means pass.
pub fn check_lqf_axioms(s: &ExpandedStructure) -> Option<ConditionFailure> {
    check_conditions(s, &lqf_conditions()).expect("closed conditions evaluate")
}

#[derive(Clone, Debug)]
pub struct IiiReport {
    /// First failing condition among III1..III10, if any.
    pub conditions: Option<ConditionFailure>,
    /// First failure of the separate compatibility identities, if any.
    pub compatibility: Option<ConditionFailure>,
}

impl IiiReport {
    pub fn pass(&self) -> bool {
        self.conditions.is_none() && self.compatibility.is_none()
    }
}

/// Evaluates III1..III10 plus the compatibility identities.
pub fn check_iii_conditions(s: &ExpandedStructure) -> IiiReport {
    IiiReport {
        conditions: check_conditions(s, &iii_conditions()).expect("closed conditions evaluate"),
        compatibility: check_conditions(s, &compatibility_conditions())
            .expect("closed conditions evaluate"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub conclusion: String,
    pub by: String,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.conclusion, self.by)
    }
}

/// Forced-conclusion trace ending in a contradiction: no pair of total
/// tables on the given lattice satisfies LQF1..LQF12.
#[derive(Clone, Debug)]
pub struct RefutationTrace {
    pub entries: Vec<TraceEntry>,
}

impl RefutationTrace {
    fn push(&mut self, conclusion: String, by: &str) {
        self.entries.push(TraceEntry { conclusion, by: by.to_string() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialAlgebra;

impl fmt::Display for TrivialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trivial algebra: the one-element structure satisfies every equation")
    }
}

impl core::error::Error for TrivialAlgebra {}

/// Propagation refuter: derives a contradiction from LQF1..LQF12 on any
/// nontrivial finite lattice, without searching the table space.
///
/// The conditions force, on a nontrivial directly indecomposable factor,
/// that `w0` is the 0/1 indicator and that `w*(z, -)` is an order
/// isomorphism onto `[0, z]` for nonzero `z`; a finite lattice has an
/// atom, and an order isomorphism onto an atom's interval is impossible
/// unless the factor has two elements, where the tenth condition bites
/// instead.
pub fn refute_finite_lqf(l: &FiniteOml) -> Result<RefutationTrace, TrivialAlgebra> {
    if l.len() < 2 {
        return Err(TrivialAlgebra);
    }
    let mut trace = RefutationTrace { entries: Vec::new() };
    trace.push(
        format!("suppose tables w, w* on a {}-element lattice satisfy LQF1..LQF12", l.len()),
        "hypothesis",
    );

    let center = l.center();
    // Minimal nonzero central elements; their intervals are the directly
    // indecomposable factors.
    let central_atoms: Vec<usize> = center
        .iter()
        .copied()
        .filter(|&z| {
            z != l.bottom() && center.iter().all(|&u| u == l.bottom() || u == z || !l.lt(u, z))
        })
        .collect();
    let factor_top = central_atoms
        .iter()
        .copied()
        .max_by_key(|&z| l.interval(z).lattice.len())
        .expect("a nontrivial lattice has a minimal nonzero central element");
    let factor = l.interval(factor_top);
    let f = &factor.lattice;
    if center.len() > 2 {
        trace.push(
            format!(
                "the center has {} elements; the lattice decomposes into {} directly \
                 indecomposable factors, and the tables induce tables on each factor",
                center.len(),
                central_atoms.len()
            ),
            "LQF11+LQF12: meets with w0-images are compatible, so factor congruences respect w, w*",
        );
        trace.push(
            format!("work in the factor [0, {}] with {} elements", l.name(factor_top), f.len()),
            "largest factor; a product of trivial factors would be trivial",
        );
    } else {
        trace.push(
            "the center is {0, 1}: the lattice is directly indecomposable".to_string(),
            "center computation",
        );
    }
    debug_assert!(f.is_directly_indecomposable());
    debug_assert!(f.len() >= 2);

    trace.push(
        "on a directly indecomposable factor, w0 = w(0, -) is forced to be the 0/1 indicator"
            .to_string(),
        "LQF1-LQF3: unique operation with w0(0) = 0, x <= w0(x), and central values",
    );

    if f.len() == 2 {
        trace.push(
            "w0(w0*(1)) = w0(~w0*(1)) forces 0 < w0*(1) < 1, since the indicator separates 0 \
             from nonzero arguments"
                .to_string(),
            "LQF10 with the forced indicator",
        );
        trace.push(
            "the two-element factor has no element strictly between 0 and 1; contradiction"
                .to_string(),
            "carrier inspection",
        );
        return Ok(trace);
    }

    // A factor with at least three elements has an atom strictly below 1.
    let atom = (0..f.len())
        .find(|&x| {
            x != f.bottom()
                && x != f.top()
                && (0..f.len()).all(|y| !f.lt(y, x) || y == f.bottom())
        })
        .expect("a finite lattice with more than two elements has an atom below the top");
    trace.push(
        format!("the factor is finite, so it has an atom a = {} with 0 < a < 1", f.name(atom)),
        "finiteness",
    );
    trace.push("w0(a) = 1 since a is nonzero".to_string(), "forced indicator");
    trace.push(
        "w(a, w*(a, x)) = x and w*(a, w(a, x)) = mu_a(x) for all x, and both maps are order \
         preserving"
            .to_string(),
        "LQF8+LQF9 (R-value 1 forces equality), LQF4, LQF5 with w0(a) = 1",
    );
    trace.push(
        "hence w*(a, -) is an order isomorphism onto [0, a], so 0 < w*(a, a) < a".to_string(),
        "order-isomorphism consequence of the inverse pair",
    );
    trace.push(
        "an atom admits no element strictly between 0 and itself; contradiction".to_string(),
        "atom contradiction",
    );
    Ok(trace)
}

/// Exhaustive oracle for two-element bases: every one of the 256 table
/// pairs fails the LQF conditions.
pub fn refute_two_element_exhaustively(l: &FiniteOml) -> bool {
    assert_eq!(l.len(), 2);
    let conds = lqf_conditions();
    let decode = |bits: u32| -> Vec<usize> { (0..4).map(|i| ((bits >> i) & 1) as usize).collect() };
    for w_bits in 0..16u32 {
        for ws_bits in 0..16u32 {
            let s = ExpandedStructure::new(l.clone(), decode(w_bits), decode(ws_bits))
                .expect("two-element tables");
            if check_conditions(&s, &conds).expect("closed conditions").is_none() {
                return false;
            }
        }
    }
    true
}

/// The ambient algebra hosting the two-generated free-algebra surrogate.
pub fn free2_ambient() -> FiniteOml {
    build::product(&build::boolean(4), &build::mo(2))
}

/// Closure of `{0, 1, g1, g2}` under meet, join and orthocomplement.
pub fn subalgebra_closure(l: &FiniteOml, g1: usize, g2: usize) -> Vec<usize> {
    let n = l.len();
    let mut member = vec![false; n];
    let mut stack = vec![l.bottom(), l.top(), g1, g2];
    let mut carrier: Vec<usize> = Vec::new();
    while let Some(x) = stack.pop() {
        if member[x] {
            continue;
        }
        member[x] = true;
        let nx = l.neg(x);
        if !member[nx] {
            stack.push(nx);
        }
        for &y in &carrier {
            let m = l.meet(x, y);
            if !member[m] {
                stack.push(m);
            }
            let j = l.join(x, y);
            if !member[j] {
                stack.push(j);
            }
        }
        carrier.push(x);
    }
    let mut out: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
    out.sort_unstable();
    out
}

/// Deterministic sweep over all generator pairs of the ambient algebra,
/// returning the lexicographically first pair of maximal closure size.
pub fn free2_generator_sweep() -> (usize, usize, usize) {
    let ambient = free2_ambient();
    let mut best = (0usize, 0usize, 0usize);
    for g1 in 0..ambient.len() {
        for g2 in 0..ambient.len() {
            let size = subalgebra_closure(&ambient, g1, g2).len();
            if size > best.2 {
                best = (g1, g2, size);
            }
        }
    }
    best
}

/// Generators found by [`free2_generator_sweep`] and pinned here; the
/// closure they generate has [`FREE2_SIZE`] elements (the whole ambient
/// algebra).
pub const FREE2_GENERATORS: (usize, usize) = (20, 34);
pub const FREE2_SIZE: usize = 96;

/// The two-generated test algebra used by [`decide2`].
pub struct FreeAlgebra2 {
    pub ambient: FiniteOml,
    pub g1: usize,
    pub g2: usize,
    pub carrier: Vec<usize>,
}

impl FreeAlgebra2 {
    pub fn standard() -> FreeAlgebra2 {
        let ambient = free2_ambient();
        let (g1, g2) = FREE2_GENERATORS;
        let carrier = subalgebra_closure(&ambient, g1, g2);
        debug_assert_eq!(carrier.len(), FREE2_SIZE);
        FreeAlgebra2 { ambient, g1, g2, carrier }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryError {
    TooManyVariables(usize),
    ExpandedSignature,
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::TooManyVariables(n) => {
                write!(f, "query has {n} variables; at most 2 are supported")
            }
            QueryError::ExpandedSignature => {
                write!(f, "query uses w/w*; only the lattice signature is decidable here")
            }
        }
    }
}

impl core::error::Error for QueryError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decide2Verdict {
    Valid,
    Counter(Valuation),
}

#[derive(Clone, Debug)]
pub struct Decide2Outcome {
    pub verdict: Decide2Verdict,
    /// The equation held at the designated generator pair.
    pub holds_at_generators: bool,
    /// Set when the generator check and the all-pairs check disagree;
    /// that would contradict freeness and is treated as a defect.
    pub defect: bool,
}

/// Decides a two-variable lattice equation by evaluation in the computed
/// free algebra: at the generator pair and, as cross-validation, at every
/// pair of carrier elements.
pub fn decide2(f2: &FreeAlgebra2, eq: &Equation) -> Result<Decide2Outcome, QueryError> {
    if eq.lhs.uses_expanded_signature() || eq.rhs.uses_expanded_signature() {
        return Err(QueryError::ExpandedSignature);
    }
    let vars: Vec<String> = eq.free_vars().into_iter().collect();
    if vars.len() > 2 {
        return Err(QueryError::TooManyVariables(vars.len()));
    }
    let slots: BTreeMap<&str, usize> =
        vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let s = Structure::Oml(&f2.ambient);
    let eval_at = |assignment: &[usize]| -> bool {
        let lv = eval_slots(&eq.lhs, s, &slots, assignment).expect("lattice-signature query");
        let rv = eval_slots(&eq.rhs, s, &slots, assignment).expect("lattice-signature query");
        lv == rv
    };

    let gens = [f2.g1, f2.g2];
    let holds_at_generators = eval_at(&gens[..vars.len()]);

    let mut counter: Option<Valuation> = None;
    match vars.len() {
        0 => {
            if !eval_at(&[]) {
                counter = Some(Valuation::new());
            }
        }
        1 => {
            for &a in &f2.carrier {
                if !eval_at(&[a]) {
                    counter = Some([(vars[0].clone(), a)].into_iter().collect());
                    break;
                }
            }
        }
        _ => {
            'outer: for &a in &f2.carrier {
                for &b in &f2.carrier {
                    if !eval_at(&[a, b]) {
                        counter = Some(
                            [(vars[0].clone(), a), (vars[1].clone(), b)].into_iter().collect(),
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    let defect = holds_at_generators != counter.is_none();
    Ok(Decide2Outcome {
        verdict: match counter {
            None => Decide2Verdict::Valid,
            Some(v) => Decide2Verdict::Counter(v),
        },
        holds_at_generators,
        defect,
    })
}

/// First countermodel in catalog order; valuations in lexicographic order.
pub fn countermodel(
    catalog: &Catalog,
    eq: &Equation,
    scope: Option<&[&str]>,
) -> Result<Option<(String, Valuation)>, EvalError> {
    for (name, l) in catalog.entries() {
        if let Some(scope) = scope {
            if !scope.contains(&name) {
                continue;
            }
        }
        if let Some(witness) = holds(Structure::Oml(l), eq)? {
            return Ok(Some((name.to_string(), witness)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDirectlyIndecomposable;

impl fmt::Display for NotDirectlyIndecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice has a nontrivial center")
    }
}

impl core::error::Error for NotDirectlyIndecomposable {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniquenessMode {
    Exhaustive,
    Propagation,
}

#[derive(Clone, Debug)]
pub struct W0UniquenessReport {
    pub mode: UniquenessMode,
    pub tables_checked: Option<u64>,
    pub satisfying: u64,
    pub unique_table_is_indicator: bool,
}

/// Confirms that exactly one unary table satisfies `w(0) = 0`,
/// `x <= w(x)` and `y = (y & w(x)) | (y & ~w(x))` on a directly
/// indecomposable lattice: the 0/1 indicator. Exhaustive over all `n^n`
/// tables for `n <= 8`, by propagation otherwise.
pub fn w0_uniqueness(l: &FiniteOml) -> Result<W0UniquenessReport, NotDirectlyIndecomposable> {
    if !l.is_directly_indecomposable() {
        return Err(NotDirectlyIndecomposable);
    }
    let n = l.len();
    let indicator: Vec<usize> =
        (0..n).map(|x| if x == l.bottom() { l.bottom() } else { l.top() }).collect();
    if n <= 8 {
        let satisfies = |table: &[usize]| -> bool {
            table[l.bottom()] == l.bottom()
                && (0..n).all(|x| l.leq(x, table[x]))
                && (0..n).all(|x| {
                    let wx = table[x];
                    (0..n).all(|y| l.join(l.meet(y, wx), l.meet(y, l.neg(wx))) == y)
                })
        };
        let mut table = vec![0usize; n];
        let mut checked = 0u64;
        let mut satisfying = 0u64;
        let mut unique_is_indicator = false;
        loop {
            checked += 1;
            if satisfies(&table) {
                satisfying += 1;
                unique_is_indicator = table == indicator;
            }
            let mut i = n;
            loop {
                if i == 0 {
                    let unique = satisfying == 1 && unique_is_indicator;
                    return Ok(W0UniquenessReport {
                        mode: UniquenessMode::Exhaustive,
                        tables_checked: Some(checked),
                        satisfying,
                        unique_table_is_indicator: unique,
                    });
                }
                i -= 1;
                table[i] += 1;
                if table[i] < n {
                    break;
                }
                table[i] = 0;
            }
        }
    }
    // Propagation: the boolean-decomposition condition makes every value
    // central, hence 0 or 1 here; x <= w(x) pins nonzero arguments to 1.
    let forced_ok = (0..n).all(|x| l.is_central(indicator[x]) && l.leq(x, indicator[x]));
    Ok(W0UniquenessReport {
        mode: UniquenessMode::Propagation,
        tables_checked: None,
        satisfying: 1,
        unique_table_is_indicator: forced_ok,
    })
}

/// The ternary discriminator `(x & ~ed(xRy)) | (z & ed(xRy))` with `ed`
/// realised as the dual central cover: equals `z` when `x = y` and `x`
/// otherwise. Returns the first violating triple, if any.
pub fn discriminator_check(
    l: &FiniteOml,
) -> Result<Option<(usize, usize, usize)>, NotDirectlyIndecomposable> {
    if !l.is_directly_indecomposable() {
        return Err(NotDirectlyIndecomposable);
    }
    for x in 0..l.len() {
        for y in 0..l.len() {
            let ed = l.dual_central_cover(l.r_op(x, y));
            for z in 0..l.len() {
                let t = l.join(l.meet(x, l.neg(ed)), l.meet(z, ed));
                let expected = if x == y { z } else { x };
                if t != expected {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

/// Laws of the 0/1 indicator as an internal dimension operation on a
/// directly indecomposable lattice: zero detection, join preservation,
/// idempotence, meet compatibility with its own image, and indicator
/// equality as the equivalence surrogate.
pub fn indicator_dimension_laws(l: &FiniteOml) -> Result<bool, NotDirectlyIndecomposable> {
    if !l.is_directly_indecomposable() {
        return Err(NotDirectlyIndecomposable);
    }
    let w0 = |x: usize| if x == l.bottom() { l.bottom() } else { l.top() };
    let mut ok = true;
    for x in 0..l.len() {
        ok &= (w0(x) == l.bottom()) == (x == l.bottom());
        ok &= w0(w0(x)) == w0(x);
        for y in 0..l.len() {
            ok &= w0(l.join(x, y)) == l.join(w0(x), w0(y));
            ok &= w0(l.meet(x, w0(y))) == l.meet(w0(x), w0(y));
            ok &= (w0(x) == w0(y)) == ((x == l.bottom()) == (y == l.bottom()));
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_equation;

    #[test]
    fn catalog_integrity() {
        let cat = Catalog::standard();
        assert!(cat.names().len() >= 8);
        let mut non_boolean = 0;
        let mut non_modular = 0;
        let mut di_beyond_two = 0;
        for (_, l) in cat.entries() {
            assert!(l.len() >= 2 && l.len() <= 32);
            let distributive =
                holds(Structure::Oml(l), &parse_equation("x&(y|z) = (x&y)|(x&z)").unwrap())
                    .unwrap()
                    .is_none();
            if !distributive {
                non_boolean += 1;
            }
            if !l.modularity_suite().is_modular {
                non_modular += 1;
            }
            if l.is_directly_indecomposable() && l.len() > 2 {
                di_beyond_two += 1;
            }
        }
        assert!(non_boolean >= 1);
        assert!(non_modular >= 1);
        assert!(di_beyond_two >= 1);
    }

    #[test]
    fn lqf_checker_examples() {
        // The one-element trivial algebra passes with any tables.
        let trivial = build::boolean(0);
        let s = ExpandedStructure::new(trivial, vec![0], vec![0]).unwrap();
        assert!(check_lqf_axioms(&s).is_none());
        assert!(check_iii_conditions(&s).pass());

        // MO2 with constant-0 tables fails LQF2 with witness x = 1.
        let mo2 = build::mo(2);
        let zeros = vec![0usize; 36];
        let s = ExpandedStructure::new(mo2.clone(), zeros.clone(), zeros).unwrap();
        let failure = check_lqf_axioms(&s).unwrap();
        assert_eq!(failure.label, "LQF2");
        assert_eq!(failure.witness["x"], mo2.top());
        assert_eq!(mo2.name(mo2.top()), "1");
    }

    #[test]
    fn two_element_exhaustive_oracle() {
        assert!(refute_two_element_exhaustively(&build::boolean(1)));
    }

    #[test]
    fn refuter_traces() {
        let trace = refute_finite_lqf(&build::boolean(1)).unwrap();
        let text: Vec<String> = trace.entries.iter().map(|e| e.conclusion.clone()).collect();
        assert!(text.iter().any(|t| t.contains("indicator")));
        assert!(text.iter().any(|t| t.contains("strictly between 0 and 1")));
        assert!(text.last().unwrap().contains("contradiction"));

        let trace = refute_finite_lqf(&build::mo(2)).unwrap();
        assert!(trace.entries.last().unwrap().conclusion.contains("contradiction"));
        assert!(trace.entries.iter().any(|e| e.conclusion.contains("atom")));

        assert_eq!(refute_finite_lqf(&build::boolean(0)).unwrap_err(), TrivialAlgebra);
    }

    #[test]
    fn decide2_examples() {
        let f2 = FreeAlgebra2::standard();
        let valid = decide2(&f2, &parse_equation("x = ~~x").unwrap()).unwrap();
        assert_eq!(valid.verdict, Decide2Verdict::Valid);
        assert!(!valid.defect);

        let valid = decide2(&f2, &parse_equation("x&(y|~y) = x").unwrap()).unwrap();
        assert_eq!(valid.verdict, Decide2Verdict::Valid);

        let invalid = decide2(&f2, &parse_equation("x&y = x").unwrap()).unwrap();
        assert!(matches!(invalid.verdict, Decide2Verdict::Counter(_)));
        assert!(!invalid.defect);

        let err = decide2(&f2, &parse_equation("x&(y|z)=(x&y)|(x&z)").unwrap());
        assert_eq!(err.unwrap_err(), QueryError::TooManyVariables(3));

        let err = decide2(&f2, &parse_equation("w0(x) = x").unwrap());
        assert_eq!(err.unwrap_err(), QueryError::ExpandedSignature);
    }

    #[test]
    fn countermodel_examples() {
        let cat = Catalog::standard();
        let dist = parse_equation("x&(y|z) = (x&y)|(x&z)").unwrap();
        let (name, _) = countermodel(&cat, &dist, None).unwrap().unwrap();
        assert_eq!(name, "mo2");

        let om = parse_equation("x | (~x & (x|y)) = x|y").unwrap();
        assert!(countermodel(&cat, &om, None).unwrap().is_none());

        let modular = parse_equation("(x&b) | (a&b) = ((x&b) | a) & b").unwrap();
        let (name, _) = countermodel(&cat, &modular, None).unwrap().unwrap();
        assert_eq!(name, "hs_b3_b2");

        let scoped = countermodel(&cat, &dist, Some(&["boolean3"])).unwrap();
        assert!(scoped.is_none());
    }

    #[test]
    fn w0_uniqueness_small() {
        let r = w0_uniqueness(&build::boolean(1)).unwrap();
        assert_eq!(r.tables_checked, Some(4));
        assert_eq!(r.satisfying, 1);
        assert!(r.unique_table_is_indicator);

        assert!(w0_uniqueness(&build::boolean(2)).is_err());
    }

    #[test]
    fn discriminator_on_di_catalog() {
        let cat = Catalog::standard();
        for (name, l) in cat.directly_indecomposable() {
            assert_eq!(discriminator_check(l).unwrap(), None, "{name}");
            assert!(indicator_dimension_laws(l).unwrap(), "{name}");
        }
        assert!(discriminator_check(&build::boolean(2)).is_err());
    }
}
