//! Permutation groups with a deterministic Schreier–Sims stabilizer chain.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// For each point p in the orbit, `(u, u⁻¹)` with `base^u = p`.
    reps: Vec<Option<(Permutation, Permutation)>>,
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut reps = vec![None; degree];
        let id = Permutation::identity(degree);
        reps[base as usize] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            reps,
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self) {
        let mut idx = 0;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            for s in &self.gens {
                let q = s.apply(p);
                if self.reps[q as usize].is_none() {
                    let u = self.reps[p as usize].as_ref().unwrap().0.compose(s);
                    let ui = u.inverse();
                    self.reps[q as usize] = Some((u, ui));
                    self.orbit.push(q);
                }
            }
            idx += 1;
        }
    }
}

/// Incremental stabilizer-chain construction. Existing coset representatives never change,
/// so every Schreier generator checked once stays sifted.
#[derive(Clone)]
pub(crate) struct ChainBuilder {
    degree: usize,
    levels: Vec<Level>,
    added: Vec<Permutation>,
}

impl ChainBuilder {
    pub(crate) fn new(degree: usize) -> Self {
        ChainBuilder {
            degree,
            levels: Vec::new(),
            added: Vec::new(),
        }
    }

    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for l in from..self.levels.len() {
            let lv = &self.levels[l];
            let p = g.apply(lv.base);
            match &lv.reps[p as usize] {
                None => return (g, l),
                Some((_, ui)) => g = g.compose(ui),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    fn install(&mut self, h: Permutation, from: usize, to: usize) {
        for l in from..=to {
            if l == self.levels.len() {
                let b = h.first_moved().expect("non-identity residue");
                self.levels.push(Level::new(self.degree, b));
            }
            self.levels[l].gens.push(h.clone());
            self.levels[l].extend_orbit();
        }
    }

    /// Adds `g`; returns false when `g` was already in the group.
    pub(crate) fn add_generator(&mut self, g: Permutation) -> bool {
        let (h, j) = self.sift_from(&g, 0);
        if h.is_identity() {
            return false;
        }
        self.added.push(g);
        self.install(h, 0, j);
        self.complete(j);
        true
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let l = i as usize;
            if l >= self.levels.len() {
                i -= 1;
                continue;
            }
            match self.next_residue(l) {
                Some((h, j)) => {
                    self.install(h, l + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn next_residue(&mut self, l: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[l].orbit.len() {
            let p = self.levels[l].orbit[k];
            let ngens = self.levels[l].gens.len();
            for s in 0..ngens {
                if !self.levels[l].checked.insert((p, s as u32)) {
                    continue;
                }
                let lv = &self.levels[l];
                let gen = &lv.gens[s];
                let q = gen.apply(p);
                let up = &lv.reps[p as usize].as_ref().unwrap().0;
                let uq_inv = &lv.reps[q as usize].as_ref().unwrap().1;
                let schreier = up.compose(gen).compose(uq_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(&schreier, l + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
            k += 1;
        }
        None
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, lv| {
            acc * BigUint::from(lv.orbit.len())
        })
    }

    pub(crate) fn finish(mut self, generators: Vec<Permutation>) -> GroupHandle {
        let order = self.order();
        for lv in &mut self.levels {
            lv.checked = HashSet::new();
        }
        GroupHandle {
            inner: Arc::new(Inner {
                degree: self.degree,
                generators,
                levels: self.levels,
                order,
            }),
        }
    }

    pub(crate) fn into_group(self) -> GroupHandle {
        let gens = self.added.clone();
        self.finish(gens)
    }
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

/// An immutable permutation group together with its stabilizer chain. Cloning is cheap.
#[derive(Clone)]
pub struct GroupHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(degree {}, order {}, gens {:?})",
            self.degree(),
            self.order(),
            self.generators()
        )
    }
}

/// Base group and full group of an imprimitive wreath product.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    pub group: GroupHandle,
    pub base: GroupHandle,
    pub block_size: usize,
    pub blocks: usize,
}

impl GroupHandle {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut b = ChainBuilder::new(degree);
        for g in &generators {
            b.add_generator(g.clone());
        }
        Ok(b.finish(generators))
    }

    /// Like [`GroupHandle::new`] but rejects degrees above `cap`.
    pub fn with_degree_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        Self::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree.max(1), Vec::new()).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_images_unchecked(
                (0..n as u32).map(|x| (x + 1) % n as u32).collect(),
            ));
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images_unchecked(t));
        }
        Self::new(n.max(1), gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        for k in 2..n {
            // 3-cycles (0 1 k) generate A_n
            let mut t: Vec<u32> = (0..n as u32).collect();
            t[0] = 1;
            t[1] = k as u32;
            t[k] = 0;
            gens.push(Permutation::from_images_unchecked(t));
        }
        Self::new(n.max(1), gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_images_unchecked(
                (0..n as u32).map(|x| (x + 1) % n as u32).collect(),
            )]
        } else {
            Vec::new()
        };
        Self::new(n.max(1), gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.inner.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order.is_one()
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.inner.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for lv in &self.inner.levels {
            for g in &lv.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    fn sift(&self, g: &Permutation) -> Permutation {
        let mut g = g.clone();
        for lv in &self.inner.levels {
            let p = g.apply(lv.base);
            match &lv.reps[p as usize] {
                None => return g,
                Some((_, ui)) => g = g.compose(ui),
            }
        }
        g
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: p.degree(),
            });
        }
        Ok(self.has(p))
    }

    /// Membership for elements already known to have the right degree.
    pub fn has(&self, p: &Permutation) -> bool {
        self.sift(p).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.has(g))
    }

    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, g: &GroupHandle) -> bool {
        self.is_subgroup_of(g)
            && g.generators()
                .iter()
                .all(|x| self.generators().iter().all(|h| self.has(&h.conjugate(x))))
    }

    /// Subgroup generated by `gens` (same degree as `self`).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<GroupHandle> {
        GroupHandle::new(self.degree(), gens)
    }

    /// Group generated by `self` and `other`.
    pub fn join(&self, other: &GroupHandle) -> GroupHandle {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let mut b = ChainBuilder::new(self.degree());
        for g in self.generators().iter().chain(other.generators()) {
            b.add_generator(g.clone());
        }
        b.into_group()
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<GroupHandle> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotInGroup(s.to_cycle_string(false)));
            }
        }
        Ok(self.normal_closure_unchecked(seeds))
    }

    pub(crate) fn normal_closure_unchecked(&self, seeds: &[Permutation]) -> GroupHandle {
        let mut b = ChainBuilder::new(self.degree());
        let mut queue = Vec::new();
        for s in seeds {
            if b.add_generator(s.clone()) {
                queue.push(s.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for g in self.generators() {
                let c = x.conjugate(g);
                if b.add_generator(c.clone()) {
                    queue.push(c);
                }
            }
        }
        b.into_group()
    }

    /// `[A, self]` for a subgroup `A` normalized by `self`: normal closure of generator commutators.
    pub fn commutator_with(&self, a: &GroupHandle) -> GroupHandle {
        let mut seeds = Vec::new();
        for x in a.generators() {
            for y in self.generators() {
                let c = Permutation::commutator(x, y);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&seeds)
    }

    pub fn derived_subgroup(&self) -> GroupHandle {
        let gens = self.generators();
        let mut seeds = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = Permutation::commutator(&gens[i], &gens[j]);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&seeds)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …`, ending at the first repeated term (which is listed once).
    pub fn derived_series(&self) -> Vec<GroupHandle> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// `γ₁ = G, γ_{i+1} = [γ_i, G]`, ending at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<GroupHandle> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_with(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].compose(&g[j]) == g[j].compose(&g[i])))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_trivial()
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn moved_points(&self) -> Vec<u32> {
        let mut moved = vec![false; self.degree()];
        for g in self.generators() {
            for p in g.moved_points() {
                moved[p as usize] = true;
            }
        }
        (0..self.degree() as u32)
            .filter(|&p| moved[p as usize])
            .collect()
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orb = vec![start as u32];
            let mut k = 0;
            while k < orb.len() {
                let p = orb[k];
                for g in self.generators() {
                    let q = g.apply(p);
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        orb.push(q);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Transitive with no nontrivial block system (minimal-block test through point 0).
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let n = self.degree();
        (1..n as u32).all(|beta| self.minimal_block(0, beta).len() == n)
    }

    /// Smallest block containing `alpha` and `beta`.
    pub fn minimal_block(&self, alpha: u32, beta: u32) -> Vec<u32> {
        let n = self.degree();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut queue = vec![(alpha, beta)];
        let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
        parent[rb as usize] = ra;
        while let Some((a, b)) = queue.pop() {
            for g in self.generators() {
                let (x, y) = (g.apply(a), g.apply(b));
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[ry as usize] = rx;
                    queue.push((x, y));
                }
            }
        }
        let root = find(&mut parent, alpha);
        (0..n as u32)
            .filter(|&x| find(&mut parent, x) == root)
            .collect()
    }

    /// Calls `f` on every element, in a fixed order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        let levels = &self.inner.levels;
        if levels.is_empty() {
            f(&self.identity());
            return;
        }
        fn rec(levels: &[Level], depth: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            // elements are t_{k-1} ⋯ t_0; build from the deepest level outwards
            let lv = &levels[depth];
            for &p in &lv.orbit {
                let u = &lv.reps[p as usize].as_ref().unwrap().0;
                let next = acc.compose(u);
                if depth == 0 {
                    f(&next);
                } else {
                    rec(levels, depth - 1, &next, f);
                }
            }
        }
        rec(levels, levels.len() - 1, &self.identity(), &mut f);
    }

    /// All elements; fails when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(o) if o <= cap => {}
            _ => {
                return Err(Error::CapExceeded {
                    what: "element enumeration",
                    order: self.order().to_string(),
                    cap,
                })
            }
        }
        let mut out = Vec::with_capacity(self.order_u64().unwrap() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(
        a: &GroupHandle,
        b: &GroupHandle,
        degree_cap: usize,
    ) -> Result<GroupHandle> {
        let n = a.degree() + b.degree();
        if n > degree_cap {
            return Err(Error::DegreeCap {
                degree: n,
                cap: degree_cap,
            });
        }
        let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.shifted(0, n)).collect();
        gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), n)));
        GroupHandle::new(n, gens)
    }

    /// Imprimitive wreath product `g wr t`: point `(block, x)` is `block * deg(g) + x`.
    pub fn wreath_product(
        g: &GroupHandle,
        t: &GroupHandle,
        degree_cap: usize,
    ) -> Result<WreathProduct> {
        let m = g.degree();
        let n = t.degree();
        let deg = m
            .checked_mul(n)
            .filter(|&d| d <= degree_cap)
            .ok_or(Error::DegreeCap {
                degree: m.saturating_mul(n),
                cap: degree_cap,
            })?;
        let copy = |h: &Permutation, block: usize| h.shifted(block * m, deg);
        let mut base_gens = Vec::new();
        for b in 0..n {
            base_gens.extend(g.generators().iter().map(|h| copy(h, b)));
        }
        let mut gens = Vec::new();
        for orbit in t.orbits() {
            gens.extend(g.generators().iter().map(|h| copy(h, orbit[0] as usize)));
        }
        for s in t.generators() {
            let images = (0..deg as u32)
                .map(|x| s.apply(x / m as u32) * m as u32 + x % m as u32)
                .collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        Ok(WreathProduct {
            group: GroupHandle::new(deg, gens)?,
            base: GroupHandle::new(deg, base_gens)?,
            block_size: m,
            blocks: n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n, false).unwrap()
    }

    fn brute_closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(n);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orders_of_standard_groups() {
        let s5 = GroupHandle::new(5, vec![p("(0 1)", 5), p("(0 1 2 3 4)", 5)]).unwrap();
        assert_eq!(s5.order_u64(), Some(120));
        let a5 = GroupHandle::new(5, vec![p("(0 1 2 3 4)", 5), p("(2 3 4)", 5)]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
        assert_eq!(GroupHandle::new(4, vec![]).unwrap().order_u64(), Some(1));
        assert_eq!(GroupHandle::alternating(6).order_u64(), Some(360));
        assert_eq!(GroupHandle::symmetric(8).order_u64(), Some(40320));
        assert!(matches!(
            GroupHandle::new(0, vec![]),
            Err(Error::EmptyDegree)
        ));
        assert!(matches!(
            GroupHandle::new(4, vec![p("(0 1)", 5)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn membership() {
        let a5 = GroupHandle::alternating(5);
        assert!(a5.contains(&p("(0 1 2)", 5)).unwrap());
        assert!(!a5.contains(&p("(0 1)", 5)).unwrap());
        let s4 = GroupHandle::new(5, vec![p("(0 1)", 5), p("(0 1 2 3)", 5)]).unwrap();
        assert!(!s4.contains(&p("(0 4)", 5)).unwrap());
        assert!(s4.contains(&p("(0 4)", 6)).is_err());
    }

    #[test]
    fn order_matches_enumeration() {
        let gens = vec![p("(0 1 2)(3 4)", 6), p("(1 5)(2 3)", 6)];
        let g = GroupHandle::new(6, gens.clone()).unwrap();
        let brute = brute_closure(6, &gens);
        assert_eq!(g.order_u64().unwrap() as usize, brute.len());
        let elts = g.elements(10_000).unwrap();
        let set: HashSet<_> = elts.iter().cloned().collect();
        assert_eq!(set.len(), elts.len());
        assert_eq!(set, brute);
    }

    #[test]
    fn normal_closure_and_series() {
        let s5 = GroupHandle::symmetric(5);
        let n = s5.normal_closure(&[p("(0 1 2)", 5)]).unwrap();
        assert_eq!(n.order_u64(), Some(60));
        assert!(s5
            .normal_closure(&[Permutation::identity(5)])
            .unwrap()
            .is_trivial());
        let a4 = GroupHandle::alternating(4);
        assert!(s5.normal_closure(&[p("(0 1)", 4)]).is_err());
        let s4 = GroupHandle::symmetric(4);
        let ds: Vec<u64> = s4
            .derived_series()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(ds, vec![24, 12, 4, 1]);
        assert!(s4.derived_subgroup().same_group(&a4));
        let lcs: Vec<u64> = s4
            .lower_central_series()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(lcs, vec![24, 12]);
        assert!(GroupHandle::alternating(5).is_perfect());
        assert!(GroupHandle::cyclic(6).derived_subgroup().is_trivial());
    }

    #[test]
    fn products() {
        let a5 = GroupHandle::alternating(5);
        let c2 = GroupHandle::cyclic(2);
        let d = GroupHandle::direct_product(&a5, &c2, 64).unwrap();
        assert_eq!((d.degree(), d.order_u64()), (7, Some(120)));
        let t = GroupHandle::trivial(1);
        assert!(GroupHandle::direct_product(&t, &t, 64)
            .unwrap()
            .is_trivial());
        let s5 = GroupHandle::symmetric(5);
        let w = GroupHandle::wreath_product(&s5, &c2, 64).unwrap();
        assert_eq!((w.group.degree(), w.group.order_u64()), (10, Some(28800)));
        assert_eq!(w.base.order_u64(), Some(14400));
        assert!(w.base.is_normal_in(&w.group));
        let w1 = GroupHandle::wreath_product(&s5, &t, 64).unwrap();
        assert!(w1.group.same_group(&s5));
        let big = GroupHandle::wreath_product(&s5, &GroupHandle::symmetric(4), 64).unwrap();
        assert_eq!(big.group.order().to_string(), "4976640000");
        assert!(GroupHandle::wreath_product(&s5, &GroupHandle::symmetric(4), 16).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(GroupHandle::symmetric(5).is_primitive());
        let d8 = GroupHandle::new(4, vec![p("(0 1 2 3)", 4), p("(1 3)", 4)]).unwrap();
        assert!(d8.is_transitive());
        assert!(!d8.is_primitive());
        let w =
            GroupHandle::wreath_product(&GroupHandle::symmetric(3), &GroupHandle::cyclic(2), 64)
                .unwrap();
        assert!(!w.group.is_primitive());
        assert_eq!(w.group.minimal_block(0, 1), vec![0, 1, 2]);
    }
}
