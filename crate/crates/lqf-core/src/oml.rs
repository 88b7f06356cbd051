//! Finite orthomodular lattices as explicit order/orthocomplement tables.
//!
//! A [`FiniteOml`] carries the order relation, the orthocomplement and
//! precomputed meet/join tables over a dense index range `0..n`. All
//! operations below are table lookups or small exhaustive scans, which is
//! the right trade-off for carriers of at most a few dozen elements.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Unvalidated lattice tables, e.g. as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawOml {
    pub names: Vec<String>,
    /// `leq[i][j]` iff element `i` is below element `j`.
    pub leq: Vec<Vec<bool>>,
    pub neg: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

/// Structural defects: the tables do not even describe a candidate algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralError {
    EmptyCarrier,
    NonSquare { row: usize, len: usize, expected: usize },
    NegLength { len: usize, expected: usize },
    IndexOutOfRange { what: &'static str, index: usize, size: usize },
    DuplicateName(String),
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralError::EmptyCarrier => write!(f, "empty carrier"),
            StructuralError::NonSquare { row, len, expected } => {
                write!(f, "leq row {row} has length {len}, expected {expected}")
            }
            StructuralError::NegLength { len, expected } => {
                write!(f, "neg table has length {len}, expected {expected}")
            }
            StructuralError::IndexOutOfRange { what, index, size } => {
                write!(f, "{what} index {index} out of range for carrier of size {size}")
            }
            StructuralError::DuplicateName(n) => write!(f, "duplicate element name {n:?}"),
        }
    }
}

/// The lattice laws, in the fixed order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    /// Reflexivity, antisymmetry, transitivity of `leq`.
    Poset,
    /// `bottom` below everything, everything below `top`.
    Bounds,
    /// Every pair has a meet and a join.
    Lattice,
    /// `~~x = x` and `x <= y` implies `~y <= ~x`.
    Involution,
    /// `~(x | y) = ~x & ~y`.
    DeMorgan,
    /// `x & ~x = 0`.
    Complement,
    /// `x | (~x & (x | y)) = x | y`.
    Orthomodular,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Poset => "partial order",
            Law::Bounds => "bounds",
            Law::Lattice => "meet/join totality",
            Law::Involution => "involution",
            Law::DeMorgan => "De Morgan",
            Law::Complement => "complement law x & ~x = 0",
            Law::Orthomodular => "orthomodular law",
        };
        f.write_str(s)
    }
}

/// First failing law together with its lexicographically smallest witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at witness {:?}", self.law, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmlError {
    Structural(StructuralError),
    Law(LawFailure),
}

impl fmt::Display for OmlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmlError::Structural(e) => write!(f, "structural error: {e}"),
            OmlError::Law(e) => write!(f, "law failure: {e}"),
        }
    }
}

impl core::error::Error for OmlError {}

impl From<StructuralError> for OmlError {
    fn from(e: StructuralError) -> Self {
        OmlError::Structural(e)
    }
}

/// A verified finite orthomodular lattice.
///
/// Immutable after construction; all tables are total.
#[derive(Clone)]
pub struct FiniteOml {
    names: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    neg: Vec<usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteOml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteOml")
            .field("n", &self.n)
            .field("names", &self.names)
            .finish()
    }
}

impl FiniteOml {
    /// Validates raw tables against the orthomodular lattice laws.
    ///
    /// Reports the first failure in the fixed law order with the
    /// lexicographically smallest witness, so error messages are stable.
    pub fn verify(raw: &RawOml) -> Result<FiniteOml, OmlError> {
        let n = raw.names.len();
        if n == 0 {
            return Err(StructuralError::EmptyCarrier.into());
        }
        if raw.leq.len() != n {
            return Err(StructuralError::NonSquare { row: usize::MAX, len: raw.leq.len(), expected: n }.into());
        }
        for (i, row) in raw.leq.iter().enumerate() {
            if row.len() != n {
                return Err(StructuralError::NonSquare { row: i, len: row.len(), expected: n }.into());
            }
        }
        if raw.neg.len() != n {
            return Err(StructuralError::NegLength { len: raw.neg.len(), expected: n }.into());
        }
        for (i, &v) in raw.neg.iter().enumerate() {
            if v >= n {
                let _ = i;
                return Err(StructuralError::IndexOutOfRange { what: "neg", index: v, size: n }.into());
            }
        }
        if raw.bottom >= n {
            return Err(StructuralError::IndexOutOfRange { what: "bottom", index: raw.bottom, size: n }.into());
        }
        if raw.top >= n {
            return Err(StructuralError::IndexOutOfRange { what: "top", index: raw.top, size: n }.into());
        }
        let mut seen = BTreeSet::new();
        for name in &raw.names {
            if !seen.insert(name.clone()) {
                return Err(StructuralError::DuplicateName(name.clone()).into());
            }
        }

        let leq = |i: usize, j: usize| raw.leq[i][j];
        let fail = |law: Law, witness: Vec<usize>| Err(OmlError::Law(LawFailure { law, witness }));

        // Poset.
        for i in 0..n {
            if !leq(i, i) {
                return fail(Law::Poset, vec![i]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq(i, j) && leq(j, i) {
                    return fail(Law::Poset, vec![i, j]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq(i, j) && leq(j, k) && !leq(i, k) {
                        return fail(Law::Poset, vec![i, j, k]);
                    }
                }
            }
        }

        // Bounds.
        for i in 0..n {
            if !leq(raw.bottom, i) || !leq(i, raw.top) {
                return fail(Law::Bounds, vec![i]);
            }
        }

        // Meet/join totality; build the tables while checking.
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                match extremum(n, |k| leq(k, i) && leq(k, j), |a, b| leq(a, b)) {
                    Some(m) => meet[i * n + j] = m,
                    None => return fail(Law::Lattice, vec![i, j]),
                }
                match extremum(n, |k| leq(i, k) && leq(j, k), |a, b| leq(b, a)) {
                    Some(m) => join[i * n + j] = m,
                    None => return fail(Law::Lattice, vec![i, j]),
                }
            }
        }

        // Involution: ~~x = x and order reversal.
        for i in 0..n {
            if raw.neg[raw.neg[i]] != i {
                return fail(Law::Involution, vec![i]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) && !leq(raw.neg[j], raw.neg[i]) {
                    return fail(Law::Involution, vec![i, j]);
                }
            }
        }

        // De Morgan.
        for i in 0..n {
            for j in 0..n {
                if raw.neg[join[i * n + j]] != meet[raw.neg[i] * n + raw.neg[j]] {
                    return fail(Law::DeMorgan, vec![i, j]);
                }
            }
        }

        // x & ~x = 0.
        for i in 0..n {
            if meet[i * n + raw.neg[i]] != raw.bottom {
                return fail(Law::Complement, vec![i]);
            }
        }

        // Orthomodular law.
        for i in 0..n {
            for j in 0..n {
                let ij = join[i * n + j];
                let lhs = join[i * n + meet[raw.neg[i] * n + ij]];
                if lhs != ij {
                    return fail(Law::Orthomodular, vec![i, j]);
                }
            }
        }

        let mut flat = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = raw.leq[i][j];
            }
        }
        Ok(FiniteOml {
            names: raw.names.clone(),
            n,
            leq: flat,
            neg: raw.neg.clone(),
            meet,
            join,
            bottom: raw.bottom,
            top: raw.top,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.n + j]
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.n + j]
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    /// `a` orthogonal to `b`, i.e. `a <= ~b`.
    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.leq(a, self.neg(b))
    }

    pub fn raw(&self) -> RawOml {
        RawOml {
            names: self.names.clone(),
            leq: (0..self.n).map(|i| (0..self.n).map(|j| self.leq(i, j)).collect()).collect(),
            neg: self.neg.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// Sasaki projection onto `[0, a]`: `a & (~a | x)`.
    pub fn sasaki(&self, a: usize, x: usize) -> usize {
        self.meet(a, self.join(self.neg(a), x))
    }

    /// `a` commutes with `b`: `a = (a | b) & (a | ~b)`.
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.meet(self.join(a, b), self.join(a, self.neg(b))) == a
    }

    /// The R connective, pointwise: `(a & b) | (~a & ~b)`.
    ///
    /// Equals `top` exactly when `a = b`.
    pub fn r_op(&self, a: usize, b: usize) -> usize {
        self.join(self.meet(a, b), self.meet(self.neg(a), self.neg(b)))
    }

    /// Central elements: `z` with `a = (a & z) | (a & ~z)` for every `a`.
    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| self.is_central(z)).collect()
    }

    pub fn is_central(&self, z: usize) -> bool {
        let nz = self.neg(z);
        (0..self.n).all(|a| self.join(self.meet(a, z), self.meet(a, nz)) == a)
    }

    pub fn is_directly_indecomposable(&self) -> bool {
        self.center().len() <= 2
    }

    /// Checks that the given set is closed under the operations and
    /// distributive, i.e. forms a Boolean subalgebra.
    pub fn center_report(&self) -> CenterReport {
        let elements = self.center();
        let inside = |x: usize| elements.binary_search(&x).is_ok();
        let mut closed = inside(self.bottom) && inside(self.top);
        let mut distributive = true;
        for &a in &elements {
            closed &= inside(self.neg(a));
            for &b in &elements {
                closed &= inside(self.meet(a, b)) && inside(self.join(a, b));
                for &c in &elements {
                    distributive &=
                        self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c));
                }
            }
        }
        CenterReport { elements, closed_under_ops: closed, distributive }
    }

    /// Least central element above `a`.
    pub fn central_cover(&self, a: usize) -> usize {
        let mut acc = self.top;
        for z in 0..self.n {
            if self.leq(a, z) && self.is_central(z) {
                acc = self.meet(acc, z);
            }
        }
        acc
    }

    /// Greatest central element below `a`, i.e. `~e(~a)`.
    pub fn dual_central_cover(&self, a: usize) -> usize {
        self.neg(self.central_cover(self.neg(a)))
    }

    /// `c_a(x) = (x & ~(x & a)) | ~(x | a)`; always a complement of `a`.
    pub fn complement_via_c(&self, a: usize, x: usize) -> usize {
        let lhs = self.meet(x, self.neg(self.meet(x, a)));
        self.join(lhs, self.neg(self.join(x, a)))
    }

    /// All complements of `a`, by brute force.
    pub fn complement_set(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&c| self.join(a, c) == self.top && self.meet(a, c) == self.bottom)
            .collect()
    }

    /// Common complement of `a` and `b`, if one exists (lexicographically
    /// smallest). The existential criterion `a|x = b|x and a&x = b&x` is
    /// evaluated independently; the two tests always coincide.
    pub fn perspective(&self, a: usize, b: usize) -> Option<usize> {
        let direct = (0..self.n).find(|&c| {
            self.join(a, c) == self.top
                && self.join(b, c) == self.top
                && self.meet(a, c) == self.bottom
                && self.meet(b, c) == self.bottom
        });
        let criterion = (0..self.n)
            .any(|x| self.join(a, x) == self.join(b, x) && self.meet(a, x) == self.meet(b, x));
        debug_assert_eq!(direct.is_some(), criterion, "perspectivity tests disagree");
        direct
    }

    /// Precomputed perspectivity relation.
    pub fn perspectivity_table(&self) -> Vec<bool> {
        let mut t = vec![false; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                t[a * self.n + b] = self.perspective(a, b).is_some();
            }
        }
        t
    }

    /// Interval algebra `[0, a]` with relative complement `~x & a`.
    pub fn interval(&self, a: usize) -> IntervalAlgebra {
        let carrier: Vec<usize> = (0..self.n).filter(|&x| self.leq(x, a)).collect();
        let pos = |x: usize| carrier.binary_search(&x).expect("closed under the interval ops");
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        let leq = carrier
            .iter()
            .map(|&x| carrier.iter().map(|&y| self.leq(x, y)).collect())
            .collect();
        let neg = carrier.iter().map(|&x| pos(self.meet(self.neg(x), a))).collect();
        let raw = RawOml { names, leq, neg, bottom: pos(self.bottom), top: pos(a) };
        let lattice = FiniteOml::verify(&raw).expect("interval of an OML is an OML");
        IntervalAlgebra { lattice, parent_elements: carrier, a }
    }

    /// Congruence `theta_z` (for central `z`) together with the isomorphism
    /// `[x] -> x & z` onto `[0, z]`, and the product embedding
    /// `x -> (x & z, x & ~z)`.
    pub fn factor_decompose(&self, z: usize) -> Result<FactorDecomposition, NotCentral> {
        if !self.is_central(z) {
            return Err(NotCentral(z));
        }
        let nz = self.neg(z);
        // Blocks of theta_z: x ~ y iff x & z = y & z.
        let mut block_of = vec![usize::MAX; self.n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut key_of_block: Vec<usize> = Vec::new();
        for x in 0..self.n {
            let key = self.meet(x, z);
            match key_of_block.iter().position(|&k| k == key) {
                Some(b) => {
                    block_of[x] = b;
                    blocks[b].push(x);
                }
                None => {
                    block_of[x] = blocks.len();
                    key_of_block.push(key);
                    blocks.push(vec![x]);
                }
            }
        }
        let partition = CongruencePartition { block_of, blocks };
        debug_assert!(partition.is_congruence(self));

        let quotient = self.interval(z);
        let map: Vec<usize> = (0..self.n)
            .map(|x| quotient.position_of(self.meet(x, z)).expect("x & z lies in [0, z]"))
            .collect();

        // The pairing x -> (x & z, x & ~z) must be a bijection onto
        // [0, z] x [0, ~z].
        let co = self.interval(nz);
        let mut seen = BTreeSet::new();
        let mut embedding_bijective = true;
        for x in 0..self.n {
            let p = (self.meet(x, z), self.meet(x, nz));
            if !seen.insert(p) {
                embedding_bijective = false;
            }
        }
        embedding_bijective &= seen.len() == quotient.lattice.len() * co.lattice.len();

        Ok(FactorDecomposition { z, partition, quotient, co_quotient: co, map, embedding_bijective })
    }

    /// Modularity via three independent detectors that must agree:
    /// the modular-pair equation, an `N_5` sublattice, and a perspective
    /// strictly comparable pair.
    pub fn modularity_suite(&self) -> ModularityReport {
        let mut eq_witness = None;
        'outer: for a in 0..self.n {
            for b in 0..self.n {
                for x in 0..self.n {
                    let xb = self.meet(x, b);
                    if self.join(xb, self.meet(a, b)) != self.meet(self.join(xb, a), b) {
                        eq_witness = Some((a, b, x));
                        break 'outer;
                    }
                }
            }
        }
        let mut n5 = None;
        'n5: for x in 0..self.n {
            for y in 0..self.n {
                if !self.lt(x, y) {
                    continue;
                }
                for z in 0..self.n {
                    if z == x || z == y {
                        continue;
                    }
                    if self.meet(x, z) == self.meet(y, z) && self.join(x, z) == self.join(y, z) {
                        n5 = Some([self.meet(x, z), x, y, z, self.join(x, z)]);
                        break 'n5;
                    }
                }
            }
        }
        let mut persp = None;
        'p: for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) && self.perspective(x, y).is_some() {
                    persp = Some((x, y));
                    break 'p;
                }
            }
        }
        ModularityReport {
            is_modular: eq_witness.is_none(),
            witness: eq_witness,
            n5,
            perspective_pair: persp,
        }
    }

    /// Searches for an isomorphism of bounded involutive lattices.
    pub fn find_isomorphism(&self, other: &FiniteOml) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.extend_iso(other, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_iso(&self, other: &FiniteOml, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == self.n {
            return (0..self.n).all(|i| {
                map[self.neg(i)] == other.neg(map[i])
                    && (0..self.n).all(|j| {
                        map[self.meet(i, j)] == other.meet(map[i], map[j])
                            && map[self.join(i, j)] == other.join(map[i], map[j])
                    })
            });
        }
        for y in 0..self.n {
            if used[y] {
                continue;
            }
            let ok = (x == self.bottom) == (y == other.bottom)
                && (x == self.top) == (y == other.top)
                && (0..x).all(|p| {
                    self.leq(x, p) == other.leq(y, map[p])
                        && self.leq(p, x) == other.leq(map[p], y)
                        && (self.neg(x) == p) == (other.neg(y) == map[p])
                });
            if ok {
                map[x] = y;
                used[y] = true;
                if self.extend_iso(other, x + 1, map, used) {
                    return true;
                }
                map[x] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }

    /// Diagnostics for unary maps attached to an element `a`, per the
    /// relative-complement preservation criterion and the order-isomorphism
    /// consequences of `w_a w_a* = id`, `w_a* w_a = mu_a`.
    pub fn map_diagnostics(&self, a: usize, maps: &MapTables) -> Result<MapDiagnostics, MapError> {
        if a == self.bottom {
            return Err(MapError::ZeroAnchor);
        }
        let mut report = MapDiagnostics::default();

        if let Some(w) = &maps.relative_complement_map {
            let interval = self.interval(a);
            if w.len() != interval.lattice.len() {
                return Err(MapError::TableSize { expected: interval.lattice.len(), got: w.len() });
            }
            for &v in w {
                if v >= self.n {
                    return Err(MapError::TableRange(v));
                }
            }
            let w_at = |x: usize| w[interval.position_of(x).expect("argument in [0, a]")];
            // Condition 1: w(mu_a(~x)) = ~w(x & a) over all of L.
            let global = (0..self.n)
                .all(|x| w_at(self.sasaki(a, self.neg(x))) == self.neg(w_at(self.meet(x, a))));
            // Condition 2: w(~_a x) = ~w(x) over [0, a].
            let local = interval
                .parent_elements
                .iter()
                .all(|&x| w_at(self.meet(self.neg(x), a)) == self.neg(w_at(x)));
            report.sasaki_condition_global = Some(global);
            report.relative_complement_condition = Some(local);
            report.conditions_equivalent = Some(global == local);
        }

        if let Some((wa, wastar)) = &maps.pair {
            if wa.len() != self.n || wastar.len() != self.n {
                return Err(MapError::TableSize { expected: self.n, got: wa.len().max(wastar.len()) });
            }
            for &v in wa.iter().chain(wastar.iter()) {
                if v >= self.n {
                    return Err(MapError::TableRange(v));
                }
            }
            let monotone = |t: &[usize]| {
                (0..self.n).all(|x| (0..self.n).all(|y| !self.leq(x, y) || self.leq(t[x], t[y])))
            };
            if !monotone(wa) {
                return Err(MapError::NotOrderPreserving("w_a"));
            }
            if !monotone(wastar) {
                return Err(MapError::NotOrderPreserving("w_a*"));
            }
            let left_inverse = (0..self.n).all(|x| wa[wastar[x]] == x);
            let sasaki_composite = (0..self.n).all(|x| wastar[wa[x]] == self.sasaki(a, x));
            report.hypotheses_hold = Some(left_inverse && sasaki_composite);

            let interval = self.interval(a);
            let onto_interval = {
                let image: BTreeSet<usize> = (0..self.n).map(|x| wastar[x]).collect();
                let target: BTreeSet<usize> = interval.parent_elements.iter().copied().collect();
                image == target && image.len() == self.n
            };
            report.wstar_order_iso_onto_interval = Some(
                onto_interval
                    && (0..self.n).all(|x| {
                        (0..self.n).all(|y| self.leq(x, y) == self.leq(wastar[x], wastar[y]))
                    }),
            );
            let restriction: Vec<usize> =
                interval.parent_elements.iter().map(|&x| wa[x]).collect();
            let bijective = {
                let img: BTreeSet<usize> = restriction.iter().copied().collect();
                img.len() == restriction.len() && img.len() == self.n
            };
            report.wa_restriction_iso = Some(
                bijective
                    && interval.parent_elements.iter().enumerate().all(|(i, &x)| {
                        interval.parent_elements.iter().enumerate().all(|(j, &y)| {
                            self.leq(x, y) == self.leq(restriction[i], restriction[j])
                        })
                    }),
            );
            report.wstar_fixes_a = Some(wastar[a] == a);
            report.fixes_iff_top = Some((wastar[a] == a) == (a == self.top));
        }

        Ok(report)
    }
}

/// Greatest (under `le`) element of `0..n` satisfying `pred`, if it exists.
fn extremum(
    n: usize,
    pred: impl Fn(usize) -> bool,
    le: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let candidates: Vec<usize> = (0..n).filter(|&k| pred(k)).collect();
    candidates
        .iter()
        .copied()
        .find(|&m| candidates.iter().all(|&k| le(k, m)))
}

#[derive(Clone, Debug)]
pub struct CenterReport {
    pub elements: Vec<usize>,
    pub closed_under_ops: bool,
    pub distributive: bool,
}

/// The interval `[0, a]` of a parent lattice, reindexed as its own algebra.
#[derive(Clone, Debug)]
pub struct IntervalAlgebra {
    pub lattice: FiniteOml,
    /// Parent index of each interval element, in ascending order.
    pub parent_elements: Vec<usize>,
    /// The interval top, as a parent index.
    pub a: usize,
}

impl IntervalAlgebra {
    pub fn position_of(&self, parent_index: usize) -> Option<usize> {
        self.parent_elements.binary_search(&parent_index).ok()
    }
}

/// A partition of the carrier compatible with the lattice operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePartition {
    pub block_of: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl CongruencePartition {
    pub fn is_congruence(&self, l: &FiniteOml) -> bool {
        let b = &self.block_of;
        let n = l.len();
        if b.len() != n {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                if b[x] != b[y] {
                    continue;
                }
                if b[l.neg(x)] != b[l.neg(y)] {
                    return false;
                }
                for c in 0..n {
                    if b[l.meet(x, c)] != b[l.meet(y, c)] || b[l.join(x, c)] != b[l.join(y, c)] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Compatibility with an extra unary operation (used for `e_d`).
    pub fn respects_unary(&self, table: &[usize]) -> bool {
        let b = &self.block_of;
        (0..b.len()).all(|x| (0..b.len()).all(|y| b[x] != b[y] || b[table[x]] == b[table[y]]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotCentral(pub usize);

impl fmt::Display for NotCentral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "element {} is not central", self.0)
    }
}

impl core::error::Error for NotCentral {}

#[derive(Clone, Debug)]
pub struct FactorDecomposition {
    pub z: usize,
    pub partition: CongruencePartition,
    pub quotient: IntervalAlgebra,
    pub co_quotient: IntervalAlgebra,
    /// For each x, the quotient position of `x & z`.
    pub map: Vec<usize>,
    pub embedding_bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularityReport {
    pub is_modular: bool,
    /// Triple `(a, b, x)` violating the modular-pair equation.
    pub witness: Option<(usize, usize, usize)>,
    /// `[bottom, x, y, z, top]` of an N5 sublattice.
    pub n5: Option<[usize; 5]>,
    /// Strictly comparable perspective pair.
    pub perspective_pair: Option<(usize, usize)>,
}

impl ModularityReport {
    /// The three detectors agree: all empty iff modular.
    pub fn consistent(&self) -> bool {
        let has = self.witness.is_some();
        self.is_modular == !has
            && self.n5.is_some() == has
            && self.perspective_pair.is_some() == has
    }
}

/// Input tables for [`FiniteOml::map_diagnostics`].
#[derive(Clone, Debug, Default)]
pub struct MapTables {
    /// A map `[0, a] -> L`, indexed by interval position.
    pub relative_complement_map: Option<Vec<usize>>,
    /// Total tables for `w_a` and `w_a*` on the whole carrier.
    pub pair: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapDiagnostics {
    pub sasaki_condition_global: Option<bool>,
    pub relative_complement_condition: Option<bool>,
    pub conditions_equivalent: Option<bool>,
    pub hypotheses_hold: Option<bool>,
    pub wstar_order_iso_onto_interval: Option<bool>,
    pub wa_restriction_iso: Option<bool>,
    pub wstar_fixes_a: Option<bool>,
    pub fixes_iff_top: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    ZeroAnchor,
    TableSize { expected: usize, got: usize },
    TableRange(usize),
    NotOrderPreserving(&'static str),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::ZeroAnchor => write!(f, "anchor element must be nonzero"),
            MapError::TableSize { expected, got } => {
                write!(f, "map table has length {got}, expected {expected}")
            }
            MapError::TableRange(v) => write!(f, "map table value {v} out of range"),
            MapError::NotOrderPreserving(which) => {
                write!(f, "{which} is not order preserving")
            }
        }
    }
}

impl core::error::Error for MapError {}

/// Construction recipes for the lattices used throughout.
pub mod build {
    use super::*;

    /// Boolean algebra `2^k`, elements as subsets of `k` atoms in mask order.
    pub fn boolean(k: u32) -> FiniteOml {
        let n = 1usize << k;
        let name = |m: usize| -> String {
            if m == 0 {
                "0".to_string()
            } else if m == n - 1 && k > 0 {
                "1".to_string()
            } else {
                let mut s = String::new();
                for bit in 0..k {
                    if m & (1 << bit) != 0 {
                        s.push('p');
                        s.push_str(&(bit + 1).to_string());
                    }
                }
                s
            }
        };
        let raw = RawOml {
            names: (0..n).map(name).collect(),
            leq: (0..n).map(|i| (0..n).map(|j| i & j == i).collect()).collect(),
            neg: (0..n).map(|i| !i & (n - 1)).collect(),
            bottom: 0,
            top: n - 1,
        };
        FiniteOml::verify(&raw).expect("boolean algebra")
    }

    /// `MO_n`: bounds plus `n` incomparable atom pairs.
    ///
    /// Carrier order `[0, 1, a1, a1', a2, a2', ...]`.
    pub fn mo(n: usize) -> FiniteOml {
        assert!(n >= 1, "mo(n) needs n >= 1");
        let size = 2 * n + 2;
        let mut names = vec!["0".to_string(), "1".to_string()];
        for i in 1..=n {
            names.push(format!("a{i}"));
            names.push(format!("a{i}'"));
        }
        let leq = (0..size)
            .map(|i| (0..size).map(|j| i == j || i == 0 || j == 1).collect())
            .collect();
        let mut neg = vec![1, 0];
        for i in 0..n {
            neg.push(2 * i + 3);
            neg.push(2 * i + 2);
        }
        let raw = RawOml { names, leq, neg, bottom: 0, top: 1 };
        FiniteOml::verify(&raw).expect("MO_n")
    }

    /// Direct product, element `(i, j)` at index `i * |l2| + j`.
    pub fn product(l1: &FiniteOml, l2: &FiniteOml) -> FiniteOml {
        let (n1, n2) = (l1.len(), l2.len());
        let n = n1 * n2;
        let names = (0..n)
            .map(|x| format!("({},{})", l1.name(x / n2), l2.name(x % n2)))
            .collect();
        let leq = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| l1.leq(x / n2, y / n2) && l2.leq(x % n2, y % n2))
                    .collect()
            })
            .collect();
        let neg = (0..n).map(|x| l1.neg(x / n2) * n2 + l2.neg(x % n2)).collect();
        let raw = RawOml {
            names,
            leq,
            neg,
            bottom: l1.bottom() * n2 + l2.bottom(),
            top: l1.top() * n2 + l2.top(),
        };
        FiniteOml::verify(&raw).expect("product of OMLs")
    }

    /// Horizontal sum: bounds identified, interiors kept incomparable
    /// across the summands, orthocomplement blockwise.
    pub fn horizontal_sum(l1: &FiniteOml, l2: &FiniteOml) -> FiniteOml {
        let inner1: Vec<usize> =
            (0..l1.len()).filter(|&x| x != l1.bottom() && x != l1.top()).collect();
        let inner2: Vec<usize> =
            (0..l2.len()).filter(|&x| x != l2.bottom() && x != l2.top()).collect();
        let n = 2 + inner1.len() + inner2.len();
        // index 0 = bottom, 1 = top, then inner1, then inner2.
        let mut names = vec!["0".to_string(), "1".to_string()];
        names.extend(inner1.iter().map(|&x| format!("l:{}", l1.name(x))));
        names.extend(inner2.iter().map(|&x| format!("r:{}", l2.name(x))));

        enum Slot {
            Bottom,
            Top,
            Left(usize),
            Right(usize),
        }
        let slot = |i: usize| -> Slot {
            if i == 0 {
                Slot::Bottom
            } else if i == 1 {
                Slot::Top
            } else if i < 2 + inner1.len() {
                Slot::Left(inner1[i - 2])
            } else {
                Slot::Right(inner2[i - 2 - inner1.len()])
            }
        };
        let back1 = |x: usize| -> usize {
            if x == l1.bottom() {
                0
            } else if x == l1.top() {
                1
            } else {
                2 + inner1.iter().position(|&y| y == x).expect("inner element")
            }
        };
        let back2 = |x: usize| -> usize {
            if x == l2.bottom() {
                0
            } else if x == l2.top() {
                1
            } else {
                2 + inner1.len() + inner2.iter().position(|&y| y == x).expect("inner element")
            }
        };
        let leq = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (slot(i), slot(j)) {
                        (Slot::Bottom, _) => true,
                        (_, Slot::Top) => true,
                        (Slot::Left(x), Slot::Left(y)) => l1.leq(x, y),
                        (Slot::Right(x), Slot::Right(y)) => l2.leq(x, y),
                        _ => false,
                    })
                    .collect()
            })
            .collect();
        let neg = (0..n)
            .map(|i| match slot(i) {
                Slot::Bottom => 1,
                Slot::Top => 0,
                Slot::Left(x) => back1(l1.neg(x)),
                Slot::Right(x) => back2(l2.neg(x)),
            })
            .collect();
        let raw = RawOml { names, leq, neg, bottom: 0, top: 1 };
        FiniteOml::verify(&raw).expect("horizontal sum of OMLs")
    }

    /// The benzene ring O6: two 4-chains glued, the smallest ortholattice
    /// violating the orthomodular law. Fails verification by design.
    pub fn benzene_raw() -> RawOml {
        // 0 < a < b < 1 and 0 < c < d < 1, ~a = d, ~b = c.
        let names = ["0", "a", "b", "c", "d", "1"].iter().map(|s| s.to_string()).collect();
        let chains: [&[usize]; 6] = [
            &[0, 1, 2, 3, 4, 5],
            &[1, 2],
            &[2],
            &[3, 4],
            &[4],
            &[5],
        ];
        let leq = (0..6)
            .map(|i| (0..6).map(|j| i == j || j == 5 || chains[i].contains(&j)).collect())
            .collect();
        RawOml { names, leq, neg: vec![5, 4, 3, 2, 1, 0], bottom: 0, top: 5 }
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;
    use alloc::collections::BTreeSet;

    fn two_chain() -> RawOml {
        RawOml {
            names: vec!["0".into(), "1".into()],
            leq: vec![vec![true, true], vec![false, true]],
            neg: vec![1, 0],
            bottom: 0,
            top: 1,
        }
    }

    #[test]
    fn two_element_chain_verifies() {
        assert!(FiniteOml::verify(&two_chain()).is_ok());
    }

    #[test]
    fn benzene_fails_orthomodular_law() {
        let err = FiniteOml::verify(&benzene_raw()).unwrap_err();
        match err {
            OmlError::Law(LawFailure { law, witness }) => {
                assert_eq!(law, Law::Orthomodular);
                // First failing pair in lex order is (a, b); (c, d) also fails.
                assert_eq!(witness, vec![1, 2]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mo2_verifies_and_has_four_atoms() {
        let l = mo(2);
        assert_eq!(l.len(), 6);
        let atoms: Vec<usize> = (0..l.len())
            .filter(|&x| x != l.bottom() && (0..l.len()).all(|y| !l.lt(y, x) || y == l.bottom()))
            .collect();
        assert_eq!(atoms.len(), 4);
    }

    #[test]
    fn structural_error_is_distinct_from_law_failure() {
        let mut raw = two_chain();
        raw.neg = vec![1];
        assert!(matches!(FiniteOml::verify(&raw), Err(OmlError::Structural(_))));
        let mut raw = two_chain();
        raw.neg = vec![7, 0];
        assert!(matches!(FiniteOml::verify(&raw), Err(OmlError::Structural(_))));
    }

    #[test]
    fn builder_sizes() {
        assert_eq!(boolean(2).len(), 4);
        assert_eq!(mo(2).len(), 6);
        assert_eq!(product(&boolean(1), &mo(2)).len(), 12);
        assert_eq!(horizontal_sum(&boolean(3), &boolean(2)).len(), 10);
    }

    #[test]
    fn interval_of_atom_is_two_chain() {
        let l = mo(2);
        let a = l.index_of("a1").unwrap();
        let iv = l.interval(a);
        assert_eq!(iv.lattice.len(), 2);
    }

    #[test]
    fn sasaki_fixed_points() {
        let l = mo(2);
        for a in 0..l.len() {
            for x in 0..l.len() {
                assert_eq!(l.sasaki(a, x) == x, l.leq(x, a));
                assert!(l.leq(l.sasaki(a, x), a));
            }
            assert_eq!(l.sasaki(l.top(), a), a);
            assert_eq!(l.sasaki(a, l.neg(a)), l.bottom());
        }
    }

    #[test]
    fn commutation_basics() {
        let l = mo(2);
        let (a, b) = (l.index_of("a1").unwrap(), l.index_of("a2").unwrap());
        assert!(l.commutes(a, a));
        assert!(l.commutes(l.bottom(), b));
        assert!(!l.commutes(a, b));
        for x in 0..l.len() {
            for y in 0..l.len() {
                assert_eq!(l.commutes(x, y), l.commutes(y, x));
                assert_eq!(l.commutes(x, y), l.commutes(l.neg(x), y));
            }
        }
    }

    #[test]
    fn centers() {
        let b = boolean(3);
        assert_eq!(b.center().len(), b.len());
        let l = mo(2);
        assert_eq!(l.center(), vec![0, 1]);
        let p = product(&mo(2), &mo(2));
        let rep = p.center_report();
        assert_eq!(rep.elements.len(), 4);
        assert!(rep.closed_under_ops && rep.distributive);
    }

    #[test]
    fn central_covers() {
        let l = product(&boolean(1), &mo(2));
        for z in l.center() {
            assert_eq!(l.central_cover(z), z);
        }
        for a in 0..l.len() {
            assert_eq!(l.dual_central_cover(a), l.neg(l.central_cover(l.neg(a))));
            assert!(l.is_central(l.central_cover(a)));
        }
        let m = mo(2);
        for a in 0..m.len() {
            if a != m.bottom() {
                assert_eq!(m.central_cover(a), m.top());
            }
        }
    }

    #[test]
    fn complements_via_c() {
        let l = mo(2);
        let a = l.index_of("a1").unwrap();
        assert_eq!(l.complement_via_c(a, l.bottom()), l.neg(a));
        assert_eq!(l.complement_via_c(a, l.top()), l.neg(a));
        let image: BTreeSet<usize> = (0..l.len()).map(|x| l.complement_via_c(a, x)).collect();
        let brute: BTreeSet<usize> = l.complement_set(a).into_iter().collect();
        assert_eq!(image, brute);
        for x in 0..l.len() {
            let c = l.complement_via_c(a, x);
            assert_eq!(l.join(a, c), l.top());
            assert_eq!(l.meet(a, c), l.bottom());
        }
    }

    #[test]
    fn perspectivity() {
        let l = mo(2);
        let (a, b) = (l.index_of("a1").unwrap(), l.index_of("a2").unwrap());
        let c = l.perspective(a, b).unwrap();
        assert_eq!(l.join(c, b), l.top());
        assert_eq!(l.meet(c, b), l.bottom());
        for x in 0..l.len() {
            assert!(l.perspective(x, x).is_some());
        }
        for k in 1..=4u32 {
            let bl = boolean(k);
            for x in 0..bl.len() {
                for y in 0..bl.len() {
                    assert_eq!(bl.perspective(x, y).is_some(), x == y);
                }
            }
        }
    }

    #[test]
    fn perspectivity_respects_center() {
        for l in [mo(2), product(&boolean(1), &mo(2)), horizontal_sum(&boolean(3), &boolean(2))] {
            let center = l.center();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if l.perspective(a, b).is_none() {
                        continue;
                    }
                    assert_eq!(l.dual_central_cover(a), l.dual_central_cover(b));
                    for &z in &center {
                        assert!(l.perspective(l.meet(a, z), l.meet(b, z)).is_some());
                        if l.leq(z, a) {
                            assert!(l.leq(z, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factor_decomposition() {
        let l = product(&boolean(1), &mo(2));
        // z = (1, 0) sits at index 1*6 + 0.
        let z = 6;
        assert!(l.is_central(z));
        let d = l.factor_decompose(z).unwrap();
        assert!(d.partition.is_congruence(&l));
        assert!(d.embedding_bijective);
        assert!(d.quotient.lattice.find_isomorphism(&boolean(1)).is_some());
        assert!(d.co_quotient.lattice.find_isomorphism(&mo(2)).is_some());

        let top = l.factor_decompose(l.top()).unwrap();
        assert_eq!(top.partition.blocks.len(), l.len());
        let bot = l.factor_decompose(l.bottom()).unwrap();
        assert_eq!(bot.partition.blocks.len(), 1);

        let a = l.index_of("(1,a1)").unwrap();
        assert!(l.factor_decompose(a).is_err());
    }

    #[test]
    fn theta_z_embedding_and_di_criterion() {
        for l in [boolean(2), mo(2), product(&boolean(1), &mo(2))] {
            let center = l.center();
            // z -> theta_z is injective and order-reversing on the center.
            for &z1 in &center {
                for &z2 in &center {
                    let d1 = l.factor_decompose(z1).unwrap();
                    let d2 = l.factor_decompose(z2).unwrap();
                    if z1 != z2 {
                        assert_ne!(d1.partition.block_of, d2.partition.block_of);
                    }
                    if l.leq(z1, z2) {
                        // theta_{z2} refines theta_{z1}.
                        for x in 0..l.len() {
                            for y in 0..l.len() {
                                if d2.partition.block_of[x] == d2.partition.block_of[y] {
                                    assert_eq!(
                                        l.meet(x, z1),
                                        l.meet(y, z1),
                                        "refinement fails"
                                    );
                                }
                            }
                        }
                    }
                }
            }
            let nontrivial_factor = center.iter().any(|&z| z != l.bottom() && z != l.top());
            assert_eq!(l.is_directly_indecomposable(), !nontrivial_factor);
        }
    }

    #[test]
    fn modularity() {
        for k in 1..=4u32 {
            let r = boolean(k).modularity_suite();
            assert!(r.is_modular && r.consistent());
        }
        let r = mo(2).modularity_suite();
        assert!(r.is_modular && r.consistent());
        let h = horizontal_sum(&boolean(3), &boolean(2));
        let r = h.modularity_suite();
        assert!(!r.is_modular && r.consistent());
        assert!(r.witness.is_some() && r.n5.is_some() && r.perspective_pair.is_some());
        let [b0, x, y, z, t] = r.n5.unwrap();
        assert!(h.lt(x, y) && h.meet(x, z) == b0 && h.join(y, z) == t);
    }

    #[test]
    fn map_diagnostics_identity_at_top() {
        let l = mo(2);
        let id: Vec<usize> = (0..l.len()).collect();
        let report = l
            .map_diagnostics(l.top(), &MapTables { relative_complement_map: None, pair: Some((id.clone(), id)) })
            .unwrap();
        assert_eq!(report.hypotheses_hold, Some(true));
        assert_eq!(report.wstar_order_iso_onto_interval, Some(true));
        assert_eq!(report.wa_restriction_iso, Some(true));
        assert_eq!(report.wstar_fixes_a, Some(true));
        assert_eq!(report.fixes_iff_top, Some(true));
    }

    #[test]
    fn map_diagnostics_automorphism_at_top() {
        // Swap the two atoms of 2^2: an automorphism, inverse to itself.
        let l = boolean(2);
        let swap = vec![0, 2, 1, 3];
        let report = l
            .map_diagnostics(l.top(), &MapTables { relative_complement_map: None, pair: Some((swap.clone(), swap)) })
            .unwrap();
        assert_eq!(report.hypotheses_hold, Some(true));
        assert_eq!(report.fixes_iff_top, Some(true));
    }

    #[test]
    fn map_diagnostics_rejects_non_monotone() {
        let l = boolean(2);
        // 0 -> 1, 1 -> 0 at the ends is not order preserving.
        let bad = vec![3, 1, 2, 0];
        let id: Vec<usize> = (0..l.len()).collect();
        let err = l
            .map_diagnostics(l.top(), &MapTables { relative_complement_map: None, pair: Some((bad, id)) })
            .unwrap_err();
        assert!(matches!(err, MapError::NotOrderPreserving(_)));
    }


    #[test]
    fn relative_complement_criterion_equivalence() {
        // Exhaustive over all maps [0, a] -> MO2 for an atom a.
        let l = mo(2);
        let a = l.index_of("a1").unwrap();
        let m = l.interval(a).lattice.len();
        assert_eq!(m, 2);
        for w0 in 0..l.len() {
            for w1 in 0..l.len() {
                let report = l
                    .map_diagnostics(
                        a,
                        &MapTables {
                            relative_complement_map: Some(vec![w0, w1]),
                            pair: None,
                        },
                    )
                    .unwrap();
                assert_eq!(report.conditions_equivalent, Some(true));
            }
        }
    }
}
