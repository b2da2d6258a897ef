//! Permutation groups given by generators.
//!
//! Points are 0-based internally and 1-based on the wire. Composition is
//! right-to-left: `(a.compose(b))(i) = a(b(i))`.
//!
//! Every group carries a lazily built stabilizer chain whose base is the full
//! point list `0..degree`. With that base the lexicographically least element
//! of a left coset `gH` can be read off greedily, which gives canonical coset
//! representatives without enumerating the ambient group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{input, resource, Result};
use crate::ffla::{FieldElem, PrimeField};

/// A permutation of `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return input(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// From 1-based images, the wire convention.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return input("permutation images are 1-based; found 0");
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// The cycle `points[0] -> points[1] -> ... -> points[0]` (0-based).
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = HashSet::new();
        for (k, &a) in points.iter().enumerate() {
            if a >= degree || !seen.insert(a) {
                return input(format!("invalid cycle {points:?} in degree {degree}"));
            }
            images[a] = points[(k + 1) % points.len()];
        }
        Self::from_images(images)
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images.swap(a, b);
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn is_odd(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
    }

    /// The sign character reduced into `field`.
    pub fn sign(&self, field: PrimeField) -> FieldElem {
        field.elem(if self.is_odd() { -1 } else { 1 })
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// This permutation acting on the block `offset..offset+degree` of a larger set.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Perm { images }
    }

    /// Blocks of size `m` permuted rigidly: `b*m + x -> self(b)*m + x`.
    pub fn blow_up(&self, m: usize) -> Perm {
        let n = self.degree();
        let mut images = vec![0u32; n * m];
        for b in 0..n {
            for x in 0..m {
                images[b * m + x] = (self.apply(b) * m + x) as u32;
            }
        }
        Perm { images }
    }

    /// Embeds into a larger degree, fixing the new points.
    pub fn extended(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images }
    }
}

/// Stabilizer chain for the full base `0, 1, .., degree-1`.
#[derive(Clone, Debug)]
struct StabChain {
    degree: usize,
    /// `trans[i][b]` maps `i` to `b` and fixes `0..i`.
    trans: Vec<Vec<Option<Perm>>>,
    orbits: Vec<Vec<usize>>,
}

impl StabChain {
    fn levels_for(degree: usize, strong: &[Perm]) -> StabChain {
        let mut trans = Vec::with_capacity(degree);
        let mut orbits = Vec::with_capacity(degree);
        for i in 0..degree {
            let gens: Vec<&Perm> = strong.iter().filter(|s| (0..i).all(|k| s.apply(k) == k)).collect();
            let mut t: Vec<Option<Perm>> = vec![None; degree];
            t[i] = Some(Perm::identity(degree));
            let mut orbit = vec![i];
            let mut head = 0;
            while head < orbit.len() {
                let c = orbit[head];
                head += 1;
                for s in &gens {
                    let d = s.apply(c);
                    if t[d].is_none() {
                        t[d] = Some(s.compose(t[c].as_ref().unwrap()));
                        orbit.push(d);
                    }
                }
            }
            trans.push(t);
            orbits.push(orbit);
        }
        StabChain { degree, trans, orbits }
    }

    fn sift(&self, from: usize, g: &Perm) -> Perm {
        let mut g = g.clone();
        for k in from..self.degree {
            let b = g.apply(k);
            match &self.trans[k][b] {
                None => return g,
                Some(u) => g = u.inverse().compose(&g),
            }
        }
        g
    }

    fn build(degree: usize, gens: &[Perm]) -> StabChain {
        let mut strong: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        'restart: loop {
            let chain = Self::levels_for(degree, &strong);
            for i in 0..degree {
                let level_gens: Vec<&Perm> =
                    strong.iter().filter(|s| (0..i).all(|k| s.apply(k) == k)).collect();
                for &b in &chain.orbits[i] {
                    let ub = chain.trans[i][b].as_ref().unwrap();
                    for s in &level_gens {
                        let sb = s.apply(b);
                        let usb = chain.trans[i][sb].as_ref().unwrap();
                        let h = usb.inverse().compose(&s.compose(ub));
                        let r = chain.sift(i + 1, &h);
                        if !r.is_identity() {
                            strong.push(r);
                            continue 'restart;
                        }
                    }
                }
            }
            return chain;
        }
    }

    fn order(&self) -> u128 {
        self.orbits.iter().map(|o| o.len() as u128).product()
    }

    /// Lexicographically least element of `g H`, where this is the chain of `H`.
    fn canonical_left(&self, g: &Perm) -> Perm {
        let mut acc = g.clone();
        for i in 0..self.degree {
            if self.orbits[i].len() == 1 {
                continue;
            }
            let best = *self.orbits[i].iter().min_by_key(|&&b| acc.apply(b)).unwrap();
            acc = acc.compose(self.trans[i][best].as_ref().unwrap());
        }
        acc
    }
}

/// Every element of a group, reached by breadth-first search over generators.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `elements[k] = gens[parent[k].1] ∘ elements[parent[k].0]` for `k > 0`.
    parent: Vec<(usize, usize)>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Generator indices `[s1, .., sm]` with `elements[k] = g_{s1} ∘ .. ∘ g_{sm}`.
    pub fn word(&self, mut k: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while k != 0 {
            let (par, s) = self.parent[k];
            w.push(s);
            k = par;
        }
        w
    }

    /// `(parent index, generator index)` of element `k > 0`.
    pub fn parent(&self, k: usize) -> (usize, usize) {
        self.parent[k]
    }
}

/// A finite permutation group given by generators.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    name: String,
    chain: OnceLock<Arc<StabChain>>,
    elements: OnceLock<Arc<Enumeration>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, degree {}, gens {:?})", self.name, self.degree, self.generators)
    }
}

/// Groups compare by the set of elements they generate.
impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>, name: impl Into<String>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return input(format!("generator {g} has degree {}, expected {degree}", g.degree()));
        }
        Ok(PermGroup { degree, generators, name: name.into(), chain: OnceLock::new(), elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![], format!("1<S{degree}")).unwrap()
    }

    /// `S_n` generated by the adjacent transpositions `(i, i+1)`.
    pub fn symmetric(n: usize) -> Self {
        let gens = (0..n.saturating_sub(1)).map(|i| Perm::transposition(n, i, i + 1)).collect();
        Self::new(n, gens, format!("S{n}")).unwrap()
    }

    /// `C_n` generated by the cycle `(1, 2, .., n)`.
    pub fn cyclic(n: usize) -> Self {
        let gens = if n > 1 { vec![Perm::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap()] } else { vec![] };
        Self::new(n, gens, format!("C{n}")).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| Arc::new(StabChain::build(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain().sift(0, g).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    /// Least element of the left coset `g H` for `H = self`.
    pub fn canonical_left_coset(&self, g: &Perm) -> Perm {
        self.chain().canonical_left(g)
    }

    /// Full element list; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<Arc<Enumeration>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        let order = self.order();
        if order > cap as u128 {
            return resource(format!("group {} has order {order}, above the enumeration cap {cap}", self.name));
        }
        let id = Perm::identity(self.degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut parent = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in self.generators.iter().enumerate() {
                let h = g.compose(&elements[head]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                    parent.push((head, s));
                }
            }
            head += 1;
        }
        let e = Arc::new(Enumeration { elements, index, parent });
        Ok(self.elements.get_or_init(|| e).clone())
    }

    /// Orbit of `point`, in breadth-first order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let c = orbit[head];
            head += 1;
            for g in &self.generators {
                let d = g.apply(c);
                if !seen[d] {
                    seen[d] = true;
                    orbit.push(d);
                }
            }
        }
        orbit
    }

    /// Subgroup generated by `gens`, with redundant generators dropped.
    pub fn subgroup(&self, gens: &[Perm], name: impl Into<String>) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return input(format!("{g} is not an element of {}", self.name));
            }
        }
        Ok(PermGroup::generated_by(self.degree, gens, name))
    }

    /// Group generated by `gens`, keeping only generators that enlarge it.
    pub fn generated_by(degree: usize, gens: &[Perm], name: impl Into<String>) -> PermGroup {
        let mut kept: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for g in gens {
            if !current.contains(g) {
                kept.push(g.clone());
                current = PermGroup::new(degree, kept.clone(), "").unwrap();
            }
        }
        current.with_name(name)
    }

    /// `s H s^-1`.
    pub fn conjugate(&self, s: &Perm) -> PermGroup {
        let si = s.inverse();
        let gens = self.generators.iter().map(|g| s.compose(&g.compose(&si))).collect();
        PermGroup::new(self.degree, gens, format!("{}^{}", self.name, s)).unwrap()
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let n = self.degree + other.degree;
        let mut gens: Vec<Perm> = self.generators.iter().map(|g| g.shifted(0, n)).collect();
        gens.extend(other.generators.iter().map(|g| g.shifted(self.degree, n)));
        PermGroup::new(n, gens, format!("{}x{}", self.name, other.name)).unwrap()
    }
}

/// A subgroup together with left coset representatives in the parent.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub sub: PermGroup,
    pub parent: PermGroup,
    /// Representatives `r_i` of `G/H`; `r_0` is the identity.
    pub coset_reps: Vec<Perm>,
}

/// Default bound on the number of cosets materialized.
pub const COSET_CAP: usize = 1_000_000;

impl SubgroupEmbedding {
    pub fn new(sub: PermGroup, parent: PermGroup) -> Result<Self> {
        Self::with_cap(sub, parent, COSET_CAP)
    }

    pub fn with_cap(sub: PermGroup, parent: PermGroup, cap: usize) -> Result<Self> {
        if sub.degree() != parent.degree() {
            return input("subgroup and parent act on different degrees");
        }
        if !sub.is_subgroup_of(&parent) {
            return input(format!("{} is not a subgroup of {}", sub.name(), parent.name()));
        }
        let index = parent.order() / sub.order();
        if index > cap as u128 {
            return resource(format!("index {index} of {} in {} exceeds the coset cap {cap}", sub.name(), parent.name()));
        }
        let coset_reps = left_coset_reps_of(&sub, &parent);
        Ok(SubgroupEmbedding { sub, parent, coset_reps })
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// The `i` with `g ∈ r_i H`.
    pub fn coset_of(&self, g: &Perm) -> usize {
        let c = self.sub.canonical_left_coset(g);
        self.coset_lookup().get(&c).copied().expect("element outside the parent group")
    }

    fn coset_lookup(&self) -> HashMap<Perm, usize> {
        self.coset_reps.iter().enumerate().map(|(i, r)| (self.sub.canonical_left_coset(r), i)).collect()
    }

    /// For each parent generator `g` and coset `j`: the `i` with `g r_j ∈ r_i H`
    /// and the element `r_i^-1 g r_j` of `H`.
    pub fn coset_action(&self) -> Vec<Vec<(usize, Perm)>> {
        let lookup = self.coset_lookup();
        self.parent
            .generators()
            .iter()
            .map(|g| {
                self.coset_reps
                    .iter()
                    .map(|rj| {
                        let grj = g.compose(rj);
                        let i = lookup[&self.sub.canonical_left_coset(&grj)];
                        (i, self.coset_reps[i].inverse().compose(&grj))
                    })
                    .collect()
            })
            .collect()
    }
}

fn left_coset_reps_of(sub: &PermGroup, parent: &PermGroup) -> Vec<Perm> {
    let id = Perm::identity(parent.degree());
    let mut seen = HashSet::new();
    seen.insert(sub.canonical_left_coset(&id));
    let mut reps = vec![id];
    let mut head = 0;
    while head < reps.len() {
        for g in parent.generators() {
            let h = g.compose(&reps[head]);
            if seen.insert(sub.canonical_left_coset(&h)) {
                reps.push(h);
            }
        }
        head += 1;
    }
    reps
}

pub fn left_coset_reps(e: &SubgroupEmbedding) -> Vec<Perm> {
    e.coset_reps.clone()
}

pub fn symmetric_group(n: usize) -> PermGroup {
    PermGroup::symmetric(n)
}

/// `C_n = <(1 2 .. n)>` inside `S_n`.
pub fn cyclic_in_symmetric(n: usize) -> SubgroupEmbedding {
    SubgroupEmbedding::new(PermGroup::cyclic(n), PermGroup::symmetric(n)).expect("C_n embeds in S_n")
}

/// Product of symmetric groups on consecutive blocks of the given sizes.
pub fn young_subgroup(parts: &[usize]) -> Result<SubgroupEmbedding> {
    let n: usize = parts.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &part in parts {
        for i in 0..part.saturating_sub(1) {
            gens.push(Perm::transposition(n, offset + i, offset + i + 1));
        }
        offset += part;
    }
    let name = format!("S{parts:?}");
    SubgroupEmbedding::new(PermGroup::new(n, gens, name)?, PermGroup::symmetric(n))
}

/// Which iterated wreath product to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TowerKind {
    /// `P_1 = C_p`, `P_{j+1} = P_j ≀ C_p`.
    P,
    /// `Q_1 = S_p`, `Q_{j+1} = Q_j ≀ S_p`.
    Q,
}

/// Default bound on `p^j` for wreath towers.
pub const TOWER_DEGREE_CAP: usize = 16;

/// Generators of `P_j` or `Q_j` acting on `p^j` points.
///
/// Level `j+1` has `p` translated copies of the level-`j` generators, one per
/// block of size `p^j`, followed by the blow-ups of the top generators.
pub fn tower_generators(p: usize, j: u32, kind: TowerKind) -> Vec<Perm> {
    let top = match kind {
        TowerKind::P => PermGroup::cyclic(p),
        TowerKind::Q => PermGroup::symmetric(p),
    };
    if j == 0 {
        return vec![];
    }
    let mut gens: Vec<Perm> = top.generators().to_vec();
    let mut m = p;
    for _ in 1..j {
        let total = m * p;
        let mut next = Vec::new();
        for b in 0..p {
            next.extend(gens.iter().map(|g| g.shifted(b * m, total)));
        }
        next.extend(top.generators().iter().map(|g| g.blow_up(m)));
        gens = next;
        m = total;
    }
    gens
}

/// `P_j` or `Q_j` inside `S_{p^j}`, with the Sylow order check for `P_j`.
pub fn wreath_tower(p: usize, j: u32, kind: TowerKind, degree_cap: usize) -> Result<SubgroupEmbedding> {
    PrimeField::new(p as u32)?;
    if j == 0 {
        return input("wreath towers start at j = 1");
    }
    let degree = match p.checked_pow(j) {
        Some(d) if d <= degree_cap => d,
        _ => return resource(format!("p^j = {p}^{j} exceeds the tower degree cap {degree_cap}")),
    };
    let name = format!("{}{}(p={p})", if kind == TowerKind::P { "P" } else { "Q" }, j);
    let sub = PermGroup::new(degree, tower_generators(p, j, kind), name)?;
    if kind == TowerKind::P {
        let expected = (p as u128).pow(legendre_exponent(p, degree) as u32);
        if sub.order() != expected {
            return crate::error::internal(format!("|P_{j}| = {} but the Sylow order is {expected}", sub.order()));
        }
    }
    let parent = PermGroup::symmetric(degree);
    if degree <= 9 {
        SubgroupEmbedding::new(sub, parent)
    } else {
        // the index is astronomically large; keep the embedding without cosets
        Ok(SubgroupEmbedding { sub, parent, coset_reps: vec![] })
    }
}

/// `v_p(n!)` by Legendre's formula.
pub fn legendre_exponent(p: usize, n: usize) -> usize {
    let mut e = 0;
    let mut q = p;
    while q <= n {
        e += n / q;
        q *= p;
    }
    e
}

/// One double coset `L s H` with the intersection `L ∩ s H s^-1`.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub rep: Perm,
    /// `L ∩ s H s^-1` embedded in `L`.
    pub intersection: SubgroupEmbedding,
    /// Number of left `H`-cosets in `L s H`.
    pub num_left_cosets: usize,
}

/// Double cosets `L \ G / H` as `L`-orbits on `G/H`.
pub fn double_coset_reps(l: &PermGroup, h: &PermGroup, g: &PermGroup) -> Result<Vec<DoubleCoset>> {
    if !l.is_subgroup_of(g) || !h.is_subgroup_of(g) {
        return input("double cosets need two subgroups of the ambient group");
    }
    let emb = SubgroupEmbedding::new(h.clone(), g.clone())?;
    let lookup = emb.coset_lookup();
    let mut assigned = vec![false; emb.index()];
    let mut out = Vec::new();
    for start in 0..emb.index() {
        if assigned[start] {
            continue;
        }
        let s = emb.coset_reps[start].clone();
        // transversal t_c in L with t_c s H = coset c
        let mut trans: HashMap<usize, Perm> = HashMap::new();
        trans.insert(start, Perm::identity(g.degree()));
        let mut queue = VecDeque::from([start]);
        assigned[start] = true;
        let mut orbit_len = 1;
        let mut stab_gens = Vec::new();
        while let Some(c) = queue.pop_front() {
            let tc = trans[&c].clone();
            for lg in l.generators() {
                let elt = lg.compose(&tc);
                let d = lookup[&h.canonical_left_coset(&elt.compose(&s))];
                match trans.get(&d) {
                    Some(td) => {
                        let st = td.inverse().compose(&elt);
                        if !st.is_identity() {
                            stab_gens.push(st);
                        }
                    }
                    None => {
                        trans.insert(d, elt);
                        assigned[d] = true;
                        orbit_len += 1;
                        queue.push_back(d);
                    }
                }
            }
        }
        let inter = PermGroup::generated_by(g.degree(), &stab_gens, format!("{}∩{}^{}", l.name(), h.name(), s));
        out.push(DoubleCoset {
            rep: s,
            intersection: SubgroupEmbedding::new(inter, l.clone())?,
            num_left_cosets: orbit_len,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1(images: &[usize]) -> Perm {
        Perm::from_one_based(images).unwrap()
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p1(&[2, 1, 3]);
        let b = p1(&[1, 3, 2]);
        // (a∘b)(1) = a(b(1)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&b), p1(&[2, 3, 1]));
    }

    #[test]
    fn cyclic_three_in_s3() {
        let e = cyclic_in_symmetric(3);
        assert_eq!(e.sub.generators()[0], p1(&[2, 3, 1]));
        assert_eq!(e.index(), 2);
        assert_eq!(e.sub.order(), 3);
    }

    #[test]
    fn trivial_cases() {
        let e = cyclic_in_symmetric(1);
        assert_eq!(e.sub.order(), 1);
        assert_eq!(e.parent.order(), 1);
        let e4 = cyclic_in_symmetric(4);
        assert_eq!((e4.sub.order(), e4.parent.order(), e4.index()), (4, 24, 6));
    }

    #[test]
    fn tower_orders() {
        let p22 = wreath_tower(2, 2, TowerKind::P, 16).unwrap();
        assert_eq!(p22.sub.order(), 8);
        assert_eq!(p22.index(), 3);
        let q21 = wreath_tower(2, 1, TowerKind::Q, 16).unwrap();
        assert_eq!(q21.sub, PermGroup::symmetric(2));
        let p32 = wreath_tower(3, 2, TowerKind::P, 16).unwrap();
        assert_eq!(p32.sub.order(), 81);
        assert_eq!(p32.sub.elements(10_000).unwrap().len(), 81);
        let q32 = wreath_tower(3, 2, TowerKind::Q, 16).unwrap();
        assert_eq!(q32.sub.order(), 6u128.pow(3) * 6);
        assert_eq!(q32.index(), 362880 / 1296);
        assert!(wreath_tower(5, 2, TowerKind::P, 16).is_err());
    }

    #[test]
    fn tower_p_inside_q_up_to_degree_16() {
        for (p, j) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
            let pj = wreath_tower(p, j, TowerKind::P, 16).unwrap();
            let qj = wreath_tower(p, j, TowerKind::Q, 16).unwrap();
            let n = p.pow(j);
            assert_eq!(pj.sub.order(), (p as u128).pow(((n - 1) / (p - 1)) as u32));
            assert!(pj.sub.is_subgroup_of(&qj.sub), "P_{j} ⊄ Q_{j} at p = {p}");
        }
    }

    #[test]
    fn double_cosets_in_s3() {
        let g = PermGroup::symmetric(3);
        let l = PermGroup::new(3, vec![p1(&[2, 1, 3])], "L").unwrap();
        let h = PermGroup::new(3, vec![p1(&[3, 2, 1])], "H").unwrap();
        let dcs = double_coset_reps(&l, &h, &g).unwrap();
        assert_eq!(dcs.len(), 2);
        let mut sizes: Vec<u128> = dcs.iter().map(|d| d.intersection.sub.order()).collect();
        sizes.sort();
        // (2 3) conjugates H onto L, so one intersection is all of L
        assert_eq!(sizes, vec![1, 2]);
        let total: usize = dcs.iter().map(|d| d.num_left_cosets).sum();
        assert_eq!(total, 3);
        assert_eq!(double_coset_reps(&g, &g, &g).unwrap().len(), 1);
    }

    #[test]
    fn s4_over_p2() {
        let p2 = wreath_tower(2, 2, TowerKind::P, 16).unwrap();
        assert_eq!(left_coset_reps(&p2).len(), 3);
        let whole = SubgroupEmbedding::new(PermGroup::symmetric(4), PermGroup::symmetric(4)).unwrap();
        assert_eq!(whole.coset_reps, vec![Perm::identity(4)]);
    }

    #[test]
    fn signs_and_young() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(p1(&[2, 1]).sign(f3).value(), 2);
        assert_eq!(Perm::identity(4).sign(f3).value(), 1);
        assert_eq!(young_subgroup(&[2, 2]).unwrap().sub.order(), 4);
        assert!(young_subgroup(&[3, 1]).unwrap().sub.is_subgroup_of(&PermGroup::symmetric(4)));
    }

    #[test]
    fn enumeration_words_reproduce_elements() {
        let g = PermGroup::symmetric(4);
        let e = g.elements(10_000).unwrap();
        assert_eq!(e.len(), 24);
        for k in 0..e.len() {
            let w = e.word(k);
            let prod = w.iter().fold(Perm::identity(4), |acc, &s| acc.compose(&g.generators()[s]));
            assert_eq!(prod, e.elements[k]);
        }
        assert!(PermGroup::symmetric(9).elements(10_000).is_err());
    }

    #[test]
    fn coset_action_lands_in_subgroup() {
        let e = young_subgroup(&[2, 1, 1]).unwrap();
        for row in e.coset_action() {
            for (_, h) in row {
                assert!(e.sub.contains(&h));
            }
        }
    }

    #[test]
    fn group_equality_ignores_generators() {
        let a = PermGroup::symmetric(3);
        let b = PermGroup::new(3, vec![p1(&[2, 3, 1]), p1(&[2, 1, 3])], "other").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, PermGroup::cyclic(3));
    }

    fn small_subgroups(n: usize) -> Vec<PermGroup> {
        let g = PermGroup::symmetric(n);
        let elts = g.elements(10_000).unwrap();
        let mut out = vec![PermGroup::trivial(n), g.clone()];
        for x in &elts.elements {
            out.push(PermGroup::new(n, vec![x.clone()], "c").unwrap());
        }
        for x in elts.elements.iter().step_by(3) {
            for y in elts.elements.iter().step_by(5) {
                out.push(PermGroup::new(n, vec![x.clone(), y.clone()], "d").unwrap());
            }
        }
        out
    }

    #[test]
    fn lagrange_and_mackey_partition() {
        for n in [3usize, 4] {
            let g = PermGroup::symmetric(n);
            let subs = small_subgroups(n);
            for h in subs.iter().step_by(7) {
                let e = SubgroupEmbedding::new(h.clone(), g.clone()).unwrap();
                assert_eq!(e.sub.order() * e.index() as u128, g.order());
                for l in subs.iter().step_by(11) {
                    let dcs = double_coset_reps(l, h, &g).unwrap();
                    // |L s H| = |L| |H| / |L ∩ sHs^-1|
                    let total: u128 = dcs
                        .iter()
                        .map(|d| l.order() * h.order() / d.intersection.sub.order())
                        .sum();
                    assert_eq!(total, g.order());
                    let cosets: usize = dcs.iter().map(|d| d.num_left_cosets).sum();
                    assert_eq!(cosets, e.index());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn order_divides_factorial(seed in proptest::collection::vec(0usize..720, 1..3)) {
            let s6 = PermGroup::symmetric(6);
            let elts = s6.elements(10_000).unwrap();
            let gens: Vec<Perm> = seed.iter().map(|&k| elts.elements[k].clone()).collect();
            let h = PermGroup::new(6, gens.clone(), "h").unwrap();
            prop_assert_eq!(720 % h.order(), 0);
            let brute = PermGroup::new(6, gens, "h").unwrap().elements(10_000).unwrap().len() as u128;
            prop_assert_eq!(h.order(), brute);
        }

        #[test]
        fn canonical_coset_is_constant_on_cosets(a in 0usize..120, b in 0usize..120) {
            let s5 = PermGroup::symmetric(5);
            let elts = s5.elements(10_000).unwrap();
            let h = young_subgroup(&[2, 3]).unwrap().sub;
            let g = &elts.elements[a];
            let x = &elts.elements[b];
            let same = h.contains(&g.inverse().compose(x));
            prop_assert_eq!(same, h.canonical_left_coset(g) == h.canonical_left_coset(x));
        }
    }
}
