//! Filter and congruence theory on finite lattices, with the `e_d`
//! operation realised as the dual central cover.
//!
//! Subsets are handled as bitmasks internally, which keeps the exhaustive
//! enumerations (the independent oracles for the correspondence theorems)
//! cheap up to carriers of 20 elements.

use crate::oml::{CongruencePartition, FiniteOml};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

const ENUM_LIMIT: usize = 20;

/// Per-lattice context: `e_d` table, upward closures and the
/// perspectivity relation, precomputed once.
pub struct FilterContext<'a> {
    pub lattice: &'a FiniteOml,
    pub ed: Vec<usize>,
    up_mask: Vec<u64>,
    persp_mask: Vec<u64>,
    full: u64,
}

impl<'a> FilterContext<'a> {
    pub fn new(lattice: &'a FiniteOml) -> FilterContext<'a> {
        let n = lattice.len();
        assert!(n <= 64, "filter machinery is limited to 64 elements");
        let ed = (0..n).map(|x| lattice.dual_central_cover(x)).collect();
        let mut up_mask = vec![0u64; n];
        let mut persp_mask = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if lattice.leq(i, j) {
                    up_mask[i] |= 1 << j;
                }
                if lattice.perspective(i, j).is_some() {
                    persp_mask[i] |= 1 << j;
                }
            }
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        FilterContext { lattice, ed, up_mask, persp_mask, full }
    }

    pub fn full_mask(&self) -> u64 {
        self.full
    }

    pub fn mask_of(&self, members: &[usize]) -> u64 {
        members.iter().fold(0u64, |m, &x| m | (1 << x))
    }

    pub fn members_of(&self, mask: u64) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&i| mask & (1 << i) != 0).collect()
    }

    fn increasing(&self, mask: u64) -> bool {
        self.members_of(mask).iter().all(|&i| self.up_mask[i] & !mask == 0)
    }

    fn meet_closed(&self, mask: u64) -> bool {
        let members = self.members_of(mask);
        members
            .iter()
            .all(|&i| members.iter().all(|&j| mask & (1 << self.lattice.meet(i, j)) != 0))
    }

    fn perspective_closed(&self, mask: u64) -> bool {
        self.members_of(mask).iter().all(|&i| self.persp_mask[i] & !mask == 0)
    }

    fn ed_closed(&self, mask: u64) -> bool {
        self.members_of(mask).iter().all(|&i| mask & (1 << self.ed[i]) != 0)
    }

    fn is_lqf_filter_mask(&self, mask: u64) -> bool {
        mask != 0
            && self.increasing(mask)
            && self.meet_closed(mask)
            && self.perspective_closed(mask)
            && self.ed_closed(mask)
    }

    /// All LQF-filters (nonempty, increasing, meet-, perspectivity- and
    /// `e_d`-closed subsets), by brute force over the power set.
    pub fn enumerate_lqf_filters(&self) -> Vec<u64> {
        assert!(self.lattice.len() <= ENUM_LIMIT, "enumeration limited to {ENUM_LIMIT} elements");
        (1..=self.full).filter(|&m| self.is_lqf_filter_mask(m)).collect()
    }

    /// OML-filters: as above but without `e_d`-closure.
    pub fn enumerate_oml_filters(&self) -> Vec<u64> {
        assert!(self.lattice.len() <= ENUM_LIMIT, "enumeration limited to {ENUM_LIMIT} elements");
        (1..=self.full)
            .filter(|&m| self.increasing(m) && self.meet_closed(m) && self.perspective_closed(m))
            .collect()
    }

    /// Increasing, meet- and `e_d`-closed subsets, perspectivity not
    /// required; coincides with the LQF-filters on every checked lattice.
    pub fn enumerate_ed_filters_no_persp(&self) -> Vec<u64> {
        assert!(self.lattice.len() <= ENUM_LIMIT, "enumeration limited to {ENUM_LIMIT} elements");
        (1..=self.full)
            .filter(|&m| self.increasing(m) && self.meet_closed(m) && self.ed_closed(m))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterClassification {
    pub increasing: bool,
    pub meet_closed: bool,
    pub perspective_closed: bool,
    pub ed_closed: bool,
    pub proper: bool,
    pub is_oml_filter: bool,
    pub is_lqf_filter: bool,
    /// Maximality via the residuation criterion: for every x, either x is
    /// a member or `~e_d(x)` is.
    pub maximal_by_criterion: bool,
    /// Maximality among proper LQF-filters by inclusion.
    pub maximal_by_inclusion: bool,
}

/// Classifies an arbitrary subset; each flag is computed independently.
pub fn classify_filter(ctx: &FilterContext<'_>, members: &[usize]) -> FilterClassification {
    let l = ctx.lattice;
    let mask = ctx.mask_of(members);
    let increasing = ctx.increasing(mask);
    let meet_closed = ctx.meet_closed(mask);
    let perspective_closed = ctx.perspective_closed(mask);
    let ed_closed = ctx.ed_closed(mask);
    let proper = mask != ctx.full;
    let nonempty = mask != 0;
    let is_oml_filter = nonempty && increasing && meet_closed && perspective_closed;
    let is_lqf_filter = is_oml_filter && ed_closed;

    let maximal_by_criterion = is_lqf_filter
        && proper
        && (0..l.len()).all(|x| mask & (1 << x) != 0 || mask & (1 << l.neg(ctx.ed[x])) != 0);
    // No proper LQF-filter strictly contains the set.
    let maximal_by_inclusion = is_lqf_filter
        && proper
        && ctx
            .enumerate_lqf_filters()
            .into_iter()
            .all(|g| g == ctx.full || g == mask || mask & !g != 0);
    FilterClassification {
        increasing,
        meet_closed,
        perspective_closed,
        ed_closed,
        proper,
        is_oml_filter,
        is_lqf_filter,
        maximal_by_criterion,
        maximal_by_inclusion,
    }
}

/// The LQF-filter generated by a subset: the up-set of `e_d` of the meet
/// of the generators (empty meet = top).
pub fn generate_filter(ctx: &FilterContext<'_>, generators: &[usize]) -> Vec<usize> {
    let l = ctx.lattice;
    let meet = generators.iter().fold(l.top(), |acc, &x| l.meet(acc, x));
    let base = ctx.ed[meet];
    (0..l.len()).filter(|&x| l.leq(base, x)).collect()
}

/// Oracle form: intersection of every LQF-filter containing the subset.
pub fn generate_filter_bruteforce(ctx: &FilterContext<'_>, generators: &[usize]) -> Vec<usize> {
    let gen_mask = ctx.mask_of(generators);
    let mut acc = ctx.full;
    for f in ctx.enumerate_lqf_filters() {
        if gen_mask & !f == 0 {
            acc &= f;
        }
    }
    ctx.members_of(acc)
}

fn canonical_blocks(block_of: &[usize]) -> Vec<usize> {
    let mut rename: Vec<Option<usize>> = vec![None; block_of.len()];
    let mut next = 0;
    block_of
        .iter()
        .map(|&b| {
            *rename[b].get_or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn block_of(&mut self, n: usize) -> Vec<usize> {
        let raw: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        canonical_blocks(&raw)
    }
}

fn partition_from_block_of(block_of: Vec<usize>) -> CongruencePartition {
    let block_count = block_of.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); block_count];
    for (x, &b) in block_of.iter().enumerate() {
        blocks[b].push(x);
    }
    CongruencePartition { block_of, blocks }
}

/// Smallest congruence identifying `a` and `b` and compatible with the
/// lattice operations and `e_d`.
pub fn principal_congruence(ctx: &FilterContext<'_>, a: usize, b: usize) -> CongruencePartition {
    let l = ctx.lattice;
    let n = l.len();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if uf.find(x) != uf.find(y) {
                    continue;
                }
                changed |= uf.union(l.neg(x), l.neg(y));
                changed |= uf.union(ctx.ed[x], ctx.ed[y]);
                for c in 0..n {
                    changed |= uf.union(l.meet(x, c), l.meet(y, c));
                    changed |= uf.union(l.join(x, c), l.join(y, c));
                }
            }
        }
    }
    partition_from_block_of(uf.block_of(n))
}

fn join_partitions(p: &[usize], q: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in (x + 1)..n {
            if p[x] == p[y] || q[x] == q[y] {
                uf.union(x, y);
            }
        }
    }
    uf.block_of(n)
}

/// All congruences compatible with the lattice operations and `e_d`:
/// the join closure of the principal congruences.
pub fn enumerate_lqf_congruences(ctx: &FilterContext<'_>) -> Vec<CongruencePartition> {
    let n = ctx.lattice.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert((0..n).collect());
    for a in 0..n {
        for b in (a + 1)..n {
            seen.insert(principal_congruence(ctx, a, b).block_of);
        }
    }
    loop {
        let current: Vec<Vec<usize>> = seen.iter().cloned().collect();
        let mut grew = false;
        for p in &current {
            for q in &current {
                let j = join_partitions(p, q);
                grew |= seen.insert(j);
            }
        }
        if !grew {
            break;
        }
    }
    seen.into_iter().map(partition_from_block_of).collect()
}

/// `theta -> {x : x theta 1}`.
pub fn filter_of_congruence(ctx: &FilterContext<'_>, theta: &CongruencePartition) -> Vec<usize> {
    let top_block = theta.block_of[ctx.lattice.top()];
    (0..ctx.lattice.len()).filter(|&x| theta.block_of[x] == top_block).collect()
}

/// `F -> {(x, y) : x R y in F}` as a partition.
pub fn congruence_of_filter(ctx: &FilterContext<'_>, members: &[usize]) -> CongruencePartition {
    let l = ctx.lattice;
    let mask = ctx.mask_of(members);
    let n = l.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in (x + 1)..n {
            if mask & (1 << l.r_op(x, y)) != 0 {
                uf.union(x, y);
            }
        }
    }
    partition_from_block_of(uf.block_of(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub congruence_count: usize,
    pub filter_count: usize,
    pub mutually_inverse: bool,
    pub order_preserving: bool,
}

impl CorrespondenceReport {
    pub fn verified(&self) -> bool {
        self.congruence_count == self.filter_count
            && self.mutually_inverse
            && self.order_preserving
    }
}

/// Exhaustively verifies that `theta -> F_theta` and `F -> theta_F` are
/// mutually inverse order isomorphisms between the `e_d`-compatible
/// congruences and the LQF-filters.
pub fn filter_congruence_maps(l: &FiniteOml) -> CorrespondenceReport {
    let ctx = FilterContext::new(l);
    let congruences = enumerate_lqf_congruences(&ctx);
    let filters = ctx.enumerate_lqf_filters();

    let mut mutually_inverse = true;
    for theta in &congruences {
        let f = filter_of_congruence(&ctx, theta);
        let f_mask = ctx.mask_of(&f);
        mutually_inverse &= filters.contains(&f_mask);
        mutually_inverse &= congruence_of_filter(&ctx, &f).block_of == theta.block_of;
    }
    for &f_mask in &filters {
        let members = ctx.members_of(f_mask);
        let theta = congruence_of_filter(&ctx, &members);
        mutually_inverse &= theta.is_congruence(l) && theta.respects_unary(&ctx.ed);
        mutually_inverse &= ctx.mask_of(&filter_of_congruence(&ctx, &theta)) == f_mask;
        mutually_inverse &= congruences.iter().any(|t| t.block_of == theta.block_of);
    }

    // Inclusion of congruences corresponds to inclusion of filters.
    let mut order_preserving = true;
    let finer = |p: &CongruencePartition, q: &CongruencePartition| -> bool {
        let n = p.block_of.len();
        (0..n).all(|x| {
            (0..n).all(|y| p.block_of[x] != p.block_of[y] || q.block_of[x] == q.block_of[y])
        })
    };
    for t1 in &congruences {
        for t2 in &congruences {
            let f1 = ctx.mask_of(&filter_of_congruence(&ctx, t1));
            let f2 = ctx.mask_of(&filter_of_congruence(&ctx, t2));
            order_preserving &= finer(t1, t2) == (f1 & !f2 == 0);
        }
    }

    CorrespondenceReport {
        congruence_count: congruences.len(),
        filter_count: filters.len(),
        mutually_inverse,
        order_preserving,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCorrespondenceReport {
    pub boolean_filter_count: usize,
    pub lqf_filter_count: usize,
    pub bijective: bool,
    pub order_iso: bool,
    /// `F = F_generated(F intersect Z)` for every LQF-filter F.
    pub recovered_from_center: bool,
}

impl CenterCorrespondenceReport {
    pub fn verified(&self) -> bool {
        self.boolean_filter_count == self.lqf_filter_count
            && self.bijective
            && self.order_iso
            && self.recovered_from_center
    }
}

/// Boolean filters of the center (nonempty increasing meet-closed subsets
/// of `Z(L)`), enumerated by brute force.
pub fn enumerate_center_filters(l: &FiniteOml) -> Vec<Vec<usize>> {
    let center = l.center();
    let k = center.len();
    assert!(k <= ENUM_LIMIT, "center enumeration limited to {ENUM_LIMIT} elements");
    let mut out = Vec::new();
    for mask in 1u64..(1 << k) {
        let members: Vec<usize> =
            (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| center[i]).collect();
        let inside = |x: usize| members.contains(&x);
        let increasing =
            members.iter().all(|&a| center.iter().all(|&z| !l.leq(a, z) || inside(z)));
        let meet_closed =
            members.iter().all(|&a| members.iter().all(|&b| inside(l.meet(a, b))));
        if increasing && meet_closed {
            out.push(members);
        }
    }
    out
}

/// Exhaustively verifies the lattice isomorphism between Boolean filters
/// of the center and LQF-filters, with inverse `F -> F intersect Z`.
pub fn center_correspondence(l: &FiniteOml) -> CenterCorrespondenceReport {
    let ctx = FilterContext::new(l);
    let center = l.center();
    let boolean_filters = enumerate_center_filters(l);
    let lqf_filters = ctx.enumerate_lqf_filters();

    let images: Vec<u64> =
        boolean_filters.iter().map(|g| ctx.mask_of(&generate_filter(&ctx, g))).collect();
    let mut bijective = true;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            bijective &= images[i] != images[j];
        }
    }
    for m in &images {
        bijective &= lqf_filters.contains(m);
    }
    for f in &lqf_filters {
        bijective &= images.contains(f);
    }

    let mut order_iso = true;
    for (g1, m1) in boolean_filters.iter().zip(&images) {
        for (g2, m2) in boolean_filters.iter().zip(&images) {
            let g_sub = g1.iter().all(|x| g2.contains(x));
            order_iso &= g_sub == (m1 & !m2 == 0);
        }
    }

    let center_mask = ctx.mask_of(&center);
    let mut recovered = true;
    for &f in &lqf_filters {
        let trace = ctx.members_of(f & center_mask);
        recovered &= ctx.mask_of(&generate_filter(&ctx, &trace)) == f;
        recovered &= boolean_filters.iter().any(|g| ctx.mask_of(g) == f & center_mask);
    }

    CenterCorrespondenceReport {
        boolean_filter_count: boolean_filters.len(),
        lqf_filter_count: lqf_filters.len(),
        bijective,
        order_iso,
        recovered_from_center: recovered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oml::build;

    #[test]
    fn classify_top_filter() {
        let b2 = build::boolean(2);
        let ctx = FilterContext::new(&b2);
        let c = classify_filter(&ctx, &[b2.top()]);
        assert!(c.is_oml_filter && c.is_lqf_filter && c.proper);
        assert!(!c.maximal_by_criterion && !c.maximal_by_inclusion);

        let mo2 = build::mo(2);
        let ctx = FilterContext::new(&mo2);
        let c = classify_filter(&ctx, &[mo2.top()]);
        assert!(c.is_lqf_filter && c.proper);
        assert!(c.maximal_by_criterion && c.maximal_by_inclusion);
    }

    #[test]
    fn atom_upset_is_not_perspective_closed() {
        let mo2 = build::mo(2);
        let ctx = FilterContext::new(&mo2);
        let a = mo2.index_of("a1").unwrap();
        let upset: Vec<usize> = (0..mo2.len()).filter(|&x| mo2.leq(a, x)).collect();
        let c = classify_filter(&ctx, &upset);
        assert!(c.increasing && c.meet_closed);
        assert!(!c.perspective_closed);
        assert!(!c.is_oml_filter);
    }

    #[test]
    fn generated_filters() {
        let mo2 = build::mo(2);
        let ctx = FilterContext::new(&mo2);
        assert_eq!(generate_filter(&ctx, &[]), vec![mo2.top()]);
        // An atom in a directly indecomposable lattice generates the
        // improper filter, since its e_d is 0.
        let a = mo2.index_of("a1").unwrap();
        let all: Vec<usize> = (0..mo2.len()).collect();
        assert_eq!(generate_filter(&ctx, &[a]), all);
        assert_eq!(generate_filter_bruteforce(&ctx, &[a]), all);

        let p = build::product(&build::boolean(1), &build::mo(2));
        let ctx = FilterContext::new(&p);
        let x = p.index_of("(1,a1)").unwrap();
        let base = p.index_of("(1,0)").unwrap();
        let expected: Vec<usize> = (0..p.len()).filter(|&y| p.leq(base, y)).collect();
        assert_eq!(generate_filter(&ctx, &[x]), expected);
        assert_eq!(generate_filter_bruteforce(&ctx, &[x]), expected);
    }

    #[test]
    fn correspondence_counts() {
        // 2 x 2 elements: four congruences and four filters.
        let b2 = build::boolean(2);
        let r = filter_congruence_maps(&b2);
        assert_eq!(r.congruence_count, 4);
        assert_eq!(r.filter_count, 4);
        assert!(r.verified());

        // MO2 is simple: two congruences, two filters.
        let mo2 = build::mo(2);
        let r = filter_congruence_maps(&mo2);
        assert_eq!(r.congruence_count, 2);
        assert!(r.verified());
    }

    #[test]
    fn congruence_enumeration_matches_literal_partitions() {
        // Against literal restricted-growth enumeration on small carriers.
        for l in [build::boolean(2), build::mo(2)] {
            let ctx = FilterContext::new(&l);
            let enumerated = enumerate_lqf_congruences(&ctx);
            let literal = all_partitions(l.len())
                .into_iter()
                .map(partition_from_block_of)
                .filter(|p| p.is_congruence(&l) && p.respects_unary(&ctx.ed))
                .count();
            assert_eq!(enumerated.len(), literal);
        }
    }

    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        fn rec(i: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == current.len() {
                out.push(current.clone());
                return;
            }
            for b in 0..=max {
                current[i] = b;
                let new_max = if b == max { max + 1 } else { max };
                rec(i + 1, new_max, current, out);
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0usize; n];
        rec(1, 1, &mut current, &mut out);
        out
    }

    #[test]
    fn center_correspondence_examples() {
        // Directly indecomposable: two Boolean filters, two LQF-filters.
        let mo2 = build::mo(2);
        let r = center_correspondence(&mo2);
        assert_eq!(r.boolean_filter_count, 2);
        assert!(r.verified());

        let b2 = build::boolean(2);
        let r = center_correspondence(&b2);
        assert_eq!(r.boolean_filter_count, 4);
        assert!(r.verified());

        let p = build::product(&build::boolean(1), &build::mo(2));
        let r = center_correspondence(&p);
        assert_eq!(r.boolean_filter_count, 4);
        assert!(r.verified());
    }

    #[test]
    fn ed_laws() {
        for l in [build::mo(2), build::product(&build::boolean(1), &build::mo(2))] {
            let ctx = FilterContext::new(&l);
            for x in 0..l.len() {
                assert_eq!(ctx.ed[ctx.ed[x]], ctx.ed[x]);
                assert!(l.leq(ctx.ed[x], x));
                for y in 0..l.len() {
                    if l.leq(x, y) {
                        assert!(l.leq(ctx.ed[x], ctx.ed[y]));
                    }
                    assert_eq!(ctx.ed[l.meet(x, y)], l.meet(ctx.ed[x], ctx.ed[y]));
                }
            }
        }
    }

    #[test]
    fn properness_criterion() {
        // The generated filter is proper iff e_d of every finite meet of
        // generators is nonzero.
        for l in [build::boolean(3), build::product(&build::boolean(1), &build::mo(2))] {
            let ctx = FilterContext::new(&l);
            let n = l.len();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let m = [a, b, c];
                        let f = generate_filter(&ctx, &m);
                        let proper = f.len() < n;
                        let mut all_pos = true;
                        for sub in 1u8..8 {
                            let meet = (0..3)
                                .filter(|i| sub & (1 << i) != 0)
                                .fold(l.top(), |acc, i| l.meet(acc, m[i]));
                            all_pos &= ctx.ed[meet] != l.bottom();
                        }
                        assert_eq!(proper, all_pos);
                    }
                }
            }
        }
    }

    #[test]
    fn persp_closure_follows_from_ed_closure() {
        let hs = build::horizontal_sum(&build::boolean(3), &build::boolean(2));
        for l in [build::boolean(2), build::mo(2), hs] {
            let ctx = FilterContext::new(&l);
            assert_eq!(ctx.enumerate_lqf_filters(), ctx.enumerate_ed_filters_no_persp());
        }
    }
}
