//! Brute-force ground truth for groups whose elements can be listed.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::bitset::Bitset;
use crate::config::{Caps, Execution};
use crate::error::{Error, Result};
use crate::group::{ChainBuilder, GroupHandle};
use crate::par;
use crate::perm::Permutation;

/// A subgroup of an enumerated group, as an element set plus a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub set: Bitset,
    pub group: GroupHandle,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.count()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn le(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }
}

#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub set: Bitset,
    pub gens: Vec<u32>,
    pub order: usize,
    pub normal: bool,
    pub maximal: bool,
}

/// Every subgroup of a group, sorted by order and then by element set.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<LatticeEntry>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn maximal(&self) -> impl Iterator<Item = &LatticeEntry> {
        self.subgroups.iter().filter(|e| e.maximal)
    }
}

pub struct Oracle {
    group: GroupHandle,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    identity: u32,
    classes: OnceLock<Vec<Vec<u32>>>,
    normals: OnceLock<Vec<Subgroup>>,
    cayley: OnceLock<Vec<u32>>,
    lattice: OnceLock<SubgroupLattice>,
}

impl std::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Oracle(order {})", self.elements.len())
    }
}

impl Oracle {
    pub fn new(group: &GroupHandle, caps: &Caps) -> Result<Self> {
        let elements = group.elements(caps.element_cap)?;
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let identity = index[&group.identity()];
        Ok(Oracle {
            group: group.clone(),
            elements,
            index,
            identity,
            classes: OnceLock::new(),
            normals: OnceLock::new(),
            cayley: OnceLock::new(),
            lattice: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn id(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity_id(&self) -> u32 {
        self.identity
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].compose(&self.elements[b as usize])]
    }

    /// Element set of a subgroup of the enumerated group.
    pub fn set_of(&self, h: &GroupHandle) -> Result<Bitset> {
        let mut set = Bitset::new(self.len());
        let mut missing = None;
        h.for_each_element(|g| match self.index.get(g) {
            Some(&i) => {
                set.insert(i as usize);
            }
            None => missing = Some(g.clone()),
        });
        match missing {
            Some(g) => Err(Error::NotInGroup(g.to_cycle_string(false))),
            None => Ok(set),
        }
    }

    pub fn subgroup(&self, h: &GroupHandle) -> Result<Subgroup> {
        Ok(Subgroup {
            set: self.set_of(h)?,
            group: h.clone(),
        })
    }

    /// Chain for an element set that is known to be a subgroup.
    pub fn handle_of(&self, set: &Bitset) -> GroupHandle {
        let target = set.count();
        let mut b = ChainBuilder::new(self.group.degree());
        for i in set.iter() {
            if b.order().to_usize() == Some(target) {
                break;
            }
            b.add_generator(self.elements[i].clone());
        }
        b.into_group()
    }

    pub fn subgroup_of_set(&self, set: Bitset) -> Subgroup {
        let group = self.handle_of(&set);
        Subgroup { set, group }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            set: Bitset::full(self.len()),
            group: self.group.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut set = Bitset::new(self.len());
        set.insert(self.identity as usize);
        Subgroup {
            set,
            group: GroupHandle::trivial(self.group.degree()),
        }
    }

    /// Permutation of element ids induced by conjugation with `g`.
    fn conjugation_map(&self, g: &Permutation) -> Vec<u32> {
        let gi = g.inverse();
        self.elements
            .iter()
            .map(|x| self.index[&gi.compose(x).compose(g)])
            .collect()
    }

    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        self.classes.get_or_init(|| {
            let maps: Vec<Vec<u32>> = self
                .group
                .generators()
                .iter()
                .map(|g| self.conjugation_map(g))
                .collect();
            let mut seen = vec![false; self.len()];
            let mut classes = Vec::new();
            for start in 0..self.len() {
                if seen[start] {
                    continue;
                }
                seen[start] = true;
                let mut class = vec![start as u32];
                let mut k = 0;
                while k < class.len() {
                    let x = class[k] as usize;
                    for m in &maps {
                        let y = m[x];
                        if !seen[y as usize] {
                            seen[y as usize] = true;
                            class.push(y);
                        }
                    }
                    k += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    pub fn is_normal_set(&self, set: &Bitset) -> bool {
        self.conjugacy_classes().iter().all(|c| {
            let inside = set.contains(c[0] as usize);
            c.iter().all(|&x| set.contains(x as usize) == inside)
        })
    }

    /// All normal subgroups: normal closures of class representatives, closed under joins.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normals
            .get_or_init(|| self.compute_normals(Execution::Sequential))
    }

    pub fn normal_subgroups_with(&self, exec: Execution) -> &[Subgroup] {
        self.normals.get_or_init(|| self.compute_normals(exec))
    }

    fn compute_normals(&self, exec: Execution) -> Vec<Subgroup> {
        let reps: Vec<u32> = self
            .conjugacy_classes()
            .iter()
            .map(|c| c[0])
            .filter(|&x| x != self.identity)
            .collect();
        let closures = par::map(exec, &reps, |&r| {
            let h = self
                .group
                .normal_closure_unchecked(&[self.elements[r as usize].clone()]);
            let set = self.set_of(&h).expect("closure inside group");
            Subgroup { set, group: h }
        });
        let mut seen: HashSet<Bitset> = HashSet::new();
        let mut list = vec![self.trivial()];
        seen.insert(list[0].set.clone());
        for s in closures {
            if seen.insert(s.set.clone()) {
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                if list[i].le(&list[j]) || list[j].le(&list[i]) {
                    continue;
                }
                let h = list[i].group.join(&list[j].group);
                let set = self.set_of(&h).expect("join inside group");
                if seen.insert(set.clone()) {
                    list.push(Subgroup { set, group: h });
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| (a.order(), &a.set).cmp(&(b.order(), &b.set)));
        list
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let normals = self.normal_subgroups();
        normals
            .iter()
            .filter(|n| !n.is_trivial())
            .filter(|n| {
                !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && m.le(n))
            })
            .cloned()
            .collect()
    }

    pub fn socle(&self) -> Subgroup {
        self.join_all(&self.minimal_normal_subgroups())
    }

    /// Join of a family of normal subgroups.
    pub fn join_all(&self, parts: &[Subgroup]) -> Subgroup {
        let mut acc = self.trivial();
        for p in parts {
            if p.le(&acc) {
                continue;
            }
            let h = acc.group.join(&p.group);
            acc = Subgroup {
                set: self.set_of(&h).expect("join inside group"),
                group: h,
            };
        }
        acc
    }

    pub fn intersect_all(&self, parts: &[Subgroup]) -> Subgroup {
        let mut set = Bitset::full(self.len());
        for p in parts {
            set = set.intersection(&p.set);
        }
        self.subgroup_of_set(set)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.group.generators();
        let mut set = Bitset::new(self.len());
        for (i, x) in self.elements.iter().enumerate() {
            if gens.iter().all(|g| g.compose(x) == x.compose(g)) {
                set.insert(i);
            }
        }
        self.subgroup_of_set(set)
    }

    /// Largest normal p-subgroup.
    pub fn o_p(&self, p: u64) -> Subgroup {
        let parts: Vec<Subgroup> = self
            .normal_subgroups()
            .iter()
            .filter(|n| is_power_of(n.order() as u64, p))
            .cloned()
            .collect();
        self.join_all(&parts)
    }

    /// Product of the O_p over the primes dividing |G|.
    pub fn fitting(&self) -> Subgroup {
        let parts: Vec<Subgroup> = prime_divisors(self.len() as u64)
            .into_iter()
            .map(|p| self.o_p(p))
            .collect();
        self.join_all(&parts)
    }

    fn cayley(&self) -> &[u32] {
        self.cayley.get_or_init(|| {
            let n = self.len();
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.mul_slow(a as u32, b as u32);
                }
            }
            t
        })
    }

    fn closure_ids(&self, table: &[u32], gens: &[u32]) -> Bitset {
        let n = self.len();
        let mut set = Bitset::new(n);
        set.insert(self.identity as usize);
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = table[x as usize * n + g as usize];
                if set.insert(y as usize) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// The full subgroup lattice, from cyclic subgroups by joins until nothing new appears.
    pub fn lattice(&self, caps: &Caps, exec: Execution) -> Result<&SubgroupLattice> {
        if self.len() as u64 > caps.subgroup_cap {
            return Err(Error::CapExceeded {
                what: "subgroup lattice",
                order: self.len().to_string(),
                cap: caps.subgroup_cap,
            });
        }
        Ok(self.lattice.get_or_init(|| self.compute_lattice(exec)))
    }

    fn compute_lattice(&self, exec: Execution) -> SubgroupLattice {
        let table = self.cayley();
        let n = self.len();
        let mut cyclic: Vec<(Bitset, u32)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for g in 0..n as u32 {
            let s = self.closure_ids(table, &[g]);
            if seen_cyclic.insert(s.clone()) {
                cyclic.push((s, g));
            }
        }
        let mut index: HashMap<Bitset, usize> = HashMap::new();
        let mut subs: Vec<(Bitset, Vec<u32>)> = Vec::new();
        for (s, g) in &cyclic {
            let gens = if *g == self.identity {
                vec![]
            } else {
                vec![*g]
            };
            index.insert(s.clone(), subs.len());
            subs.push((s.clone(), gens));
        }
        let mut frontier: Vec<usize> = (0..subs.len()).collect();
        while !frontier.is_empty() {
            let found: Vec<Vec<(Bitset, Vec<u32>)>> = par::map(exec, &frontier, |&h| {
                let (hs, hg) = &subs[h];
                let mut local: Vec<(Bitset, Vec<u32>)> = Vec::new();
                let mut local_seen = HashSet::new();
                for (cs, cg) in &cyclic {
                    if cs.is_subset(hs) {
                        continue;
                    }
                    let mut gens = hg.clone();
                    gens.push(*cg);
                    let j = self.closure_ids(table, &gens);
                    if !index.contains_key(&j) && local_seen.insert(j.clone()) {
                        local.push((j, gens));
                    }
                }
                local
            });
            let mut next = Vec::new();
            for batch in found {
                for (s, g) in batch {
                    if !index.contains_key(&s) {
                        index.insert(s.clone(), subs.len());
                        next.push(subs.len());
                        subs.push((s, g));
                    }
                }
            }
            frontier = next;
        }
        subs.sort_by(|a, b| (a.0.count(), &a.0).cmp(&(b.0.count(), &b.0)));
        let full = n;
        let entries: Vec<LatticeEntry> = subs
            .iter()
            .map(|(s, g)| LatticeEntry {
                set: s.clone(),
                gens: g.clone(),
                order: s.count(),
                normal: self.is_normal_set(s),
                maximal: false,
            })
            .collect();
        let maximal: Vec<bool> = par::map_range(exec, entries.len(), |i| {
            let e = &entries[i];
            e.order < full
                && !entries
                    .iter()
                    .any(|k| k.order > e.order && k.order < full && e.set.is_subset(&k.set))
        });
        let subgroups = entries.into_iter().zip(maximal).map(|(mut e, m)| {
            e.maximal = m;
            e
        });
        SubgroupLattice {
            subgroups: subgroups.collect(),
        }
    }

    pub fn lattice_subgroup(&self, e: &LatticeEntry) -> GroupHandle {
        let gens = e
            .gens
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect();
        GroupHandle::new(self.group.degree(), gens).expect("degree matches")
    }

    /// Intersection of the maximal subgroups.
    pub fn frattini(&self, caps: &Caps, exec: Execution) -> Result<Subgroup> {
        // Φ(G) is nilpotent and normal, so it lies in the Fitting subgroup.
        if self.fitting().is_trivial() {
            return Ok(self.trivial());
        }
        let lattice = self.lattice(caps, exec)?;
        let mut set = Bitset::full(self.len());
        for m in lattice.maximal() {
            set = set.intersection(&m.set);
        }
        Ok(self.subgroup_of_set(set))
    }

    /// Least k ≥ 1 with x^k in `set`.
    pub fn order_modulo(&self, x: u32, set: &Bitset) -> u64 {
        let g = &self.elements[x as usize];
        let mut acc = g.clone();
        let mut k = 1;
        while !set.contains(self.index[&acc] as usize) {
            acc = acc.compose(g);
            k += 1;
        }
        k
    }
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorisation with multiplicity, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Centre of a group at any scale: an element commuting with every generator is fixed by
/// the image of one point per orbit, so candidates are enumerated orbit by orbit and sifted.
pub fn center(group: &GroupHandle) -> Result<GroupHandle> {
    const SEARCH_LIMIT: u128 = 1_000_000;
    let n = group.degree();
    let gens = group.generators();
    let orbits = group.orbits();
    // For each orbit, the consistent maps determined by where its representative goes.
    let mut per_orbit: Vec<Vec<Vec<(u32, u32)>>> = Vec::new();
    for orb in &orbits {
        let r = orb[0];
        let mut options = Vec::new();
        for &c in orb {
            let mut img = vec![u32::MAX; n];
            img[r as usize] = c;
            let mut queue = vec![r];
            let mut ok = true;
            while let Some(x) = queue.pop() {
                for g in gens {
                    let (y, z) = (g.apply(x), g.apply(img[x as usize]));
                    if img[y as usize] == u32::MAX {
                        img[y as usize] = z;
                        queue.push(y);
                    } else if img[y as usize] != z {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                let mut used = vec![false; n];
                if orb
                    .iter()
                    .all(|&x| !std::mem::replace(&mut used[img[x as usize] as usize], true))
                {
                    options.push(orb.iter().map(|&x| (x, img[x as usize])).collect());
                }
            }
        }
        per_orbit.push(options);
    }
    let combos: u128 = per_orbit.iter().map(|o| o.len() as u128).product();
    if combos > SEARCH_LIMIT {
        return Err(Error::Undecidable(format!(
            "centre search needs {combos} candidates"
        )));
    }
    let mut found = Vec::new();
    let mut choice = vec![0usize; per_orbit.len()];
    'outer: loop {
        let mut images = vec![0u32; n];
        for (k, opts) in per_orbit.iter().enumerate() {
            for &(x, y) in &opts[choice[k]] {
                images[x as usize] = y;
            }
        }
        let z = Permutation::from_images(images)?;
        if !z.is_identity() && group.has(&z) {
            found.push(z);
        }
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < per_orbit[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    let mut b = ChainBuilder::new(n);
    for z in found {
        b.add_generator(z);
    }
    Ok(b.into_group())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n, false).unwrap()
    }

    fn q8() -> GroupHandle {
        GroupHandle::new(
            8,
            vec![p("(0 1 2 3)(4 5 6 7)", 8), p("(0 4 2 6)(1 7 3 5)", 8)],
        )
        .unwrap()
    }

    fn oracle(g: &GroupHandle) -> Oracle {
        Oracle::new(g, &Caps::default()).unwrap()
    }

    #[test]
    fn enumeration_and_caps() {
        let s4 = GroupHandle::symmetric(4);
        assert_eq!(oracle(&s4).len(), 24);
        assert_eq!(oracle(&GroupHandle::trivial(3)).len(), 1);
        let caps = Caps {
            element_cap: 100,
            ..Caps::default()
        };
        assert!(matches!(
            Oracle::new(&GroupHandle::symmetric(5), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn lattices() {
        let caps = Caps::default();
        let count = |g: &GroupHandle| {
            oracle(g)
                .lattice(&caps, Execution::Sequential)
                .unwrap()
                .len()
        };
        assert_eq!(count(&GroupHandle::symmetric(3)), 6);
        assert_eq!(count(&GroupHandle::cyclic(7)), 2);
        assert_eq!(count(&GroupHandle::symmetric(4)), 30);
        assert_eq!(count(&q8()), 6);
        assert_eq!(count(&GroupHandle::alternating(5)), 59);
        let big = Caps {
            subgroup_cap: 100,
            ..caps
        };
        assert!(oracle(&GroupHandle::symmetric(5))
            .lattice(&big, Execution::Sequential)
            .is_err());
    }

    #[test]
    fn lattice_parallel_matches_sequential() {
        let caps = Caps::default();
        let g = GroupHandle::symmetric(4);
        let a = oracle(&g);
        let b = oracle(&g);
        let la = a.lattice(&caps, Execution::Sequential).unwrap();
        let lb = b.lattice(&caps, Execution::Parallel).unwrap();
        let sa: Vec<_> = la
            .subgroups
            .iter()
            .map(|e| (&e.set, e.normal, e.maximal))
            .collect();
        let sb: Vec<_> = lb
            .subgroups
            .iter()
            .map(|e| (&e.set, e.normal, e.maximal))
            .collect();
        assert_eq!(sa, sb);
    }

    #[test]
    fn normal_subgroups() {
        let orders = |g: &GroupHandle| {
            oracle(g)
                .normal_subgroups()
                .iter()
                .map(|s| s.order())
                .collect::<Vec<_>>()
        };
        assert_eq!(orders(&GroupHandle::alternating(5)), vec![1, 60]);
        assert_eq!(orders(&GroupHandle::symmetric(4)), vec![1, 4, 12, 24]);
        assert_eq!(orders(&GroupHandle::cyclic(6)).len(), 4);
        let a5 = GroupHandle::alternating(5);
        let a5a5 = GroupHandle::direct_product(&a5, &a5, 64).unwrap();
        assert_eq!(orders(&a5a5), vec![1, 60, 60, 3600]);
    }

    #[test]
    fn frattini_centre_fitting_socle() {
        let caps = Caps::default();
        let o = oracle(&q8());
        assert_eq!(o.frattini(&caps, Execution::Sequential).unwrap().order(), 2);
        assert_eq!(o.center().order(), 2);
        let s4 = oracle(&GroupHandle::symmetric(4));
        assert!(s4.center().is_trivial());
        assert_eq!(s4.fitting().order(), 4);
        let mins = s4.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        let a5 = GroupHandle::alternating(5);
        let a5a5 = oracle(&GroupHandle::direct_product(&a5, &a5, 64).unwrap());
        assert_eq!(a5a5.socle().order(), 3600);
        assert_eq!(oracle(&GroupHandle::cyclic(7)).socle().order(), 7);
    }

    #[test]
    fn centre_backtrack_matches_brute_force() {
        let groups = vec![
            q8(),
            GroupHandle::symmetric(4),
            GroupHandle::cyclic(6),
            GroupHandle::direct_product(&GroupHandle::symmetric(3), &GroupHandle::cyclic(4), 64)
                .unwrap(),
            GroupHandle::new(4, vec![p("(0 1 2 3)", 4), p("(1 3)", 4)]).unwrap(),
        ];
        for g in groups {
            let z = center(&g).unwrap();
            assert_eq!(
                z.order_u64().unwrap() as usize,
                oracle(&g).center().order(),
                "{g:?}"
            );
        }
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(prime_factors(12), vec![2, 2, 3]);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert!(is_power_of(8, 2) && is_power_of(1, 3) && !is_power_of(12, 2));
    }
}
