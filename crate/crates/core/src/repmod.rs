//! Finite-dimensional modules for permutation groups over `F_p`.
//!
//! A module is given by one matrix per group generator, acting on column
//! vectors. A module may carry a parity vector, in which case it is a module
//! in super vector spaces and every generator matrix preserves the grading.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{input, internal, resource, Result};
use crate::ffla::{kernel, EchelonBuilder, FieldMatrix, PrimeField, Subspace};
use crate::permgrp::{Perm, PermGroup, SubgroupEmbedding};
use crate::rng::SplitMix64;

/// Groups up to this order are validated on their full multiplication table.
pub const FULL_TABLE_CAP: usize = 10_000;

/// Number of random words checked when the group is too large to enumerate.
pub const SPOT_CHECK_WORDS: usize = 200;

/// How the homomorphism property of a module was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidationState {
    /// Checked on every edge of the Cayley graph.
    FullTable,
    /// `w^ord(w)` acts trivially for a sample of random words.
    SpotChecked,
    /// Built by an operation that preserves the homomorphism property.
    ByConstruction,
}

/// Symmetry used on tensor powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Braiding {
    /// Plain flip of tensor factors.
    Symmetric,
    /// Flip with the sign `(-1)^{|v||w|}`.
    Koszul,
}

/// A representation `G -> GL(dim, F_p)`, optionally graded.
#[derive(Clone)]
pub struct GModule {
    group: PermGroup,
    field: PrimeField,
    dim: usize,
    gens: Vec<FieldMatrix>,
    validation: ValidationState,
    parity: Option<Vec<u8>>,
    element_cache: OnceLock<Arc<Vec<FieldMatrix>>>,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GModule")
            .field("group", &self.group.name())
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .field("parity", &self.parity)
            .field("gens", &self.gens)
            .finish()
    }
}

impl GModule {
    /// Validated constructor for externally supplied data.
    pub fn new(group: PermGroup, field: PrimeField, gens: Vec<FieldMatrix>, parity: Option<Vec<u8>>) -> Result<Self> {
        Self::with_seed(group, field, gens, parity, 0)
    }

    pub fn with_seed(
        group: PermGroup,
        field: PrimeField,
        gens: Vec<FieldMatrix>,
        parity: Option<Vec<u8>>,
        seed: u64,
    ) -> Result<Self> {
        Self::validated(group, field, gens, parity, seed, FULL_TABLE_CAP)
    }

    /// Validated constructor; groups of order at most `table_cap` are checked on the full table.
    pub fn validated(
        group: PermGroup,
        field: PrimeField,
        gens: Vec<FieldMatrix>,
        parity: Option<Vec<u8>>,
        seed: u64,
        table_cap: usize,
    ) -> Result<Self> {
        if gens.len() != group.num_generators() {
            return input(format!(
                "{} generator matrices for a group with {} generators",
                gens.len(),
                group.num_generators()
            ));
        }
        let dim = match gens.first() {
            Some(m) => m.rows(),
            None => match &parity {
                Some(par) => par.len(),
                None => return input("a module over a group without generators needs an explicit dimension"),
            },
        };
        let mut m = Self::assemble(group, field, dim, gens, parity)?;
        m.validation = m.validate(seed, table_cap)?;
        Ok(m)
    }

    /// Module over a group that may have no generators, checked against `dim`.
    pub fn with_dim(group: PermGroup, field: PrimeField, dim: usize, gens: Vec<FieldMatrix>, parity: Option<Vec<u8>>) -> Result<Self> {
        if gens.len() != group.num_generators() {
            return input("generator matrix count does not match the group");
        }
        let mut m = Self::assemble(group, field, dim, gens, parity)?;
        m.validation = m.validate(0, FULL_TABLE_CAP)?;
        Ok(m)
    }

    fn assemble(group: PermGroup, field: PrimeField, dim: usize, gens: Vec<FieldMatrix>, parity: Option<Vec<u8>>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if g.field() != field {
                return input(format!("generator matrix {k} lives over F_{}, expected F_{}", g.field().p(), field.p()));
            }
            if g.rows() != dim || g.cols() != dim {
                return input(format!("generator matrix {k} is {}x{}, expected {dim}x{dim}", g.rows(), g.cols()));
            }
            if !g.is_invertible() {
                return input(format!("generator matrix {k} is not invertible"));
            }
        }
        if let Some(par) = &parity {
            if field.p() == 2 {
                return input("super vector spaces require characteristic other than 2");
            }
            if par.len() != dim {
                return input(format!("parity vector has length {}, expected {dim}", par.len()));
            }
            if par.iter().any(|&x| x > 1) {
                return input("parity entries must be 0 or 1");
            }
            for (k, g) in gens.iter().enumerate() {
                for r in 0..dim {
                    for c in 0..dim {
                        if par[r] != par[c] && g.get(r, c) != 0 {
                            return input(format!("generator matrix {k} does not preserve the grading"));
                        }
                    }
                }
            }
        }
        Ok(GModule {
            group,
            field,
            dim,
            gens,
            validation: ValidationState::ByConstruction,
            parity,
            element_cache: OnceLock::new(),
        })
    }

    /// Constructor for modules that are correct by construction.
    pub(crate) fn from_parts(group: PermGroup, field: PrimeField, dim: usize, gens: Vec<FieldMatrix>, parity: Option<Vec<u8>>) -> Self {
        debug_assert_eq!(gens.len(), group.num_generators());
        debug_assert!(gens.iter().all(|g| g.rows() == dim && g.cols() == dim));
        GModule { group, field, dim, gens, validation: ValidationState::ByConstruction, parity, element_cache: OnceLock::new() }
    }

    fn validate(&self, seed: u64, table_cap: usize) -> Result<ValidationState> {
        if self.group.order() <= table_cap as u128 {
            let elts = self.group.elements(table_cap)?;
            let mats = self.compute_element_matrices(&elts);
            for (k, g) in elts.elements.iter().enumerate() {
                for (s, gen) in self.group.generators().iter().enumerate() {
                    let target = elts.index_of(&gen.compose(g)).expect("enumeration is closed");
                    if self.gens[s].mul_unchecked(&mats[k]) != mats[target] {
                        return input(format!(
                            "generator matrices do not define a homomorphism: relation fails at {} * {}",
                            gen, g
                        ));
                    }
                }
            }
            let _ = self.element_cache.set(Arc::new(mats));
            Ok(ValidationState::FullTable)
        } else {
            let mut rng = SplitMix64::new(seed);
            let n = self.group.num_generators();
            for _ in 0..SPOT_CHECK_WORDS {
                let len = 1 + rng.index(12);
                let mut perm = Perm::identity(self.group.degree());
                let mut mat = FieldMatrix::identity(self.field, self.dim);
                for _ in 0..len {
                    let s = rng.index(n);
                    perm = perm.compose(&self.group.generators()[s]);
                    mat = mat.mul_unchecked(&self.gens[s]);
                }
                if !mat.pow(perm.order()).is_identity() {
                    return input(format!("generator matrices do not define a homomorphism: word of order {} fails", perm.order()));
                }
            }
            Ok(ValidationState::SpotChecked)
        }
    }

    fn compute_element_matrices(&self, elts: &crate::permgrp::Enumeration) -> Vec<FieldMatrix> {
        let mut mats: Vec<FieldMatrix> = Vec::with_capacity(elts.len());
        mats.push(FieldMatrix::identity(self.field, self.dim));
        for k in 1..elts.len() {
            let (par, s) = elts.parent(k);
            let m = self.gens[s].mul_unchecked(&mats[par]);
            mats.push(m);
        }
        mats
    }

    /// Matrices of all group elements, indexed as in `group().elements(cap)`.
    pub fn element_matrices(&self, cap: usize) -> Result<Arc<Vec<FieldMatrix>>> {
        if let Some(m) = self.element_cache.get() {
            return Ok(m.clone());
        }
        let elts = self.group.elements(cap)?;
        let mats = Arc::new(self.compute_element_matrices(&elts));
        Ok(self.element_cache.get_or_init(|| mats).clone())
    }

    /// Matrix of an arbitrary element of the group.
    pub fn element_matrix(&self, g: &Perm) -> Result<FieldMatrix> {
        let elts = self.group.elements(FULL_TABLE_CAP)?;
        let Some(k) = elts.index_of(g) else {
            return input(format!("{g} is not an element of {}", self.group.name()));
        };
        Ok(self.element_matrices(usize::MAX)?[k].clone())
    }

    pub fn trivial(group: PermGroup, field: PrimeField, dim: usize) -> Self {
        let gens = vec![FieldMatrix::identity(field, dim); group.num_generators()];
        Self::from_parts(group, field, dim, gens, None)
    }

    /// The sign character of a permutation group.
    pub fn sign(group: PermGroup, field: PrimeField) -> Self {
        let gens = group
            .generators()
            .iter()
            .map(|g| FieldMatrix::scalar(field, 1, g.sign(field).value()))
            .collect();
        Self::from_parts(group, field, 1, gens, None)
    }

    /// The natural permutation module on the points.
    pub fn permutation(group: PermGroup, field: PrimeField) -> Self {
        let n = group.degree();
        let gens = group.generators().iter().map(|g| perm_matrix(field, g)).collect();
        Self::from_parts(group, field, n, gens, None)
    }

    /// The regular module, as the permutation module on the enumerated elements.
    pub fn regular(group: PermGroup, field: PrimeField) -> Result<Self> {
        let elts = group.elements(FULL_TABLE_CAP)?;
        let n = elts.len();
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = FieldMatrix::zeros(field, n, n);
                for (k, x) in elts.elements.iter().enumerate() {
                    m.set(elts.index_of(&g.compose(x)).unwrap(), k, 1);
                }
                m
            })
            .collect();
        Ok(Self::from_parts(group, field, n, gens, None))
    }

    /// `M_i` over `C_p`: a single Jordan block `I + N` of size `i`, `N` the superdiagonal.
    pub fn jordan_block(p: u32, i: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if i == 0 || i > p as usize {
            return input(format!("Jordan block size {i} outside 1..={p}"));
        }
        Ok(Self::from_parts(PermGroup::cyclic(p as usize), field, i, vec![unipotent_block(field, i)], None))
    }

    /// Direct sum of Jordan blocks over `C_p`.
    pub fn cp_module(p: u32, sizes: &[usize]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mut acc = FieldMatrix::zeros(field, 0, 0);
        for &i in sizes {
            if i == 0 || i > p as usize {
                return input(format!("Jordan block size {i} outside 1..={p}"));
            }
            acc = acc.direct_sum(&unipotent_block(field, i));
        }
        let dim = acc.rows();
        Ok(Self::from_parts(PermGroup::cyclic(p as usize), field, dim, vec![acc], None))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[FieldMatrix] {
        &self.gens
    }

    pub fn validation_state(&self) -> ValidationState {
        self.validation
    }

    pub fn parity(&self) -> Option<&[u8]> {
        self.parity.as_deref()
    }

    pub fn is_super(&self) -> bool {
        self.parity.is_some()
    }

    /// Parity of basis vector `i`; 0 for ordinary modules.
    pub fn parity_of(&self, i: usize) -> u8 {
        self.parity.as_ref().map_or(0, |p| p[i])
    }

    /// `(even dim, odd dim)`.
    pub fn super_dim(&self) -> (usize, usize) {
        let odd = self.parity.as_ref().map_or(0, |p| p.iter().filter(|&&x| x == 1).count());
        (self.dim - odd, odd)
    }

    pub fn braiding(&self) -> Braiding {
        if self.is_super() { Braiding::Koszul } else { Braiding::Symmetric }
    }

    /// Same action, different parity data.
    pub fn with_parity(&self, parity: Option<Vec<u8>>) -> Result<Self> {
        Self::assemble(self.group.clone(), self.field, self.dim, self.gens.clone(), parity)
    }

    pub(crate) fn same_context(&self, other: &GModule) -> Result<()> {
        if self.field != other.field {
            return input(format!("modules over F_{} and F_{}", self.field.p(), other.field.p()));
        }
        if self.group.degree() != other.group.degree() || self.group.generators() != other.group.generators() {
            return input(format!("modules over different groups: {} and {}", self.group.name(), other.group.name()));
        }
        if self.is_super() != other.is_super() {
            return input("cannot combine an ordinary module with a super module");
        }
        Ok(())
    }

    /// Is every generator the identity matrix?
    pub fn is_trivial_action(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    /// `X_{\bar 0}` and `X_{\bar 1}` as index lists.
    pub fn parity_indices(&self, par: u8) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.parity_of(i) == par).collect()
    }
}

pub(crate) fn perm_matrix(field: PrimeField, g: &Perm) -> FieldMatrix {
    let n = g.degree();
    let mut m = FieldMatrix::zeros(field, n, n);
    for i in 0..n {
        m.set(g.apply(i), i, 1);
    }
    m
}

pub(crate) fn unipotent_block(field: PrimeField, i: usize) -> FieldMatrix {
    let mut m = FieldMatrix::identity(field, i);
    for r in 0..i.saturating_sub(1) {
        m.set(r, r + 1, 1);
    }
    m
}

/// A `G`-equivariant linear map.
#[derive(Clone, Debug)]
pub struct GModMorphism {
    pub source: GModule,
    pub target: GModule,
    /// `target.dim x source.dim`.
    pub matrix: FieldMatrix,
}

impl GModMorphism {
    pub fn new(source: GModule, target: GModule, matrix: FieldMatrix) -> Result<Self> {
        source.same_context(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() || matrix.field() != source.field() {
            return input(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            ));
        }
        for (s, (a, b)) in source.gens.iter().zip(&target.gens).enumerate() {
            if matrix.mul_unchecked(a) != b.mul_unchecked(&matrix) {
                return input(format!("matrix does not intertwine generator {s}"));
            }
        }
        if source.is_super() {
            for r in 0..target.dim() {
                for c in 0..source.dim() {
                    if target.parity_of(r) != source.parity_of(c) && matrix.get(r, c) != 0 {
                        return input("morphisms of super modules must be even");
                    }
                }
            }
        }
        Ok(GModMorphism { source, target, matrix })
    }

    pub fn identity(x: &GModule) -> Self {
        GModMorphism { source: x.clone(), target: x.clone(), matrix: FieldMatrix::identity(x.field(), x.dim()) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn compose(&self, first: &GModMorphism) -> Result<GModMorphism> {
        if first.target.dim() != self.source.dim() {
            return input("morphisms are not composable");
        }
        Ok(GModMorphism { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.try_mul(&first.matrix)? })
    }
}

/// A subquotient `sub / killed` of a module, materialized as its own module.
///
/// The basis of the induced module is the echelon basis of the image of `sub`
/// in `ambient / killed`; `lifts` gives a representative in `sub` for each.
#[derive(Clone, Debug)]
pub struct SubquotientPresentation {
    pub ambient: GModule,
    pub sub: Subspace,
    pub killed: Subspace,
    pub module: GModule,
    pub lifts: Vec<Vec<u32>>,
    image: Subspace,
}

impl SubquotientPresentation {
    pub fn new(ambient: &GModule, sub: Subspace, killed: Subspace) -> Result<Self> {
        if sub.ambient_dim() != ambient.dim() || killed.ambient_dim() != ambient.dim() {
            return input("subquotient subspaces live in the wrong ambient space");
        }
        if !sub.contains_subspace(&killed)? {
            return input("killed subspace is not contained in the sub");
        }
        let free = killed.complement_indices();
        let project = |v: &[u32]| -> Vec<u32> {
            let r = killed.reduce(v);
            free.iter().map(|&c| r[c]).collect()
        };
        let images: Vec<Vec<u32>> = sub.basis_vectors().iter().map(|v| project(v)).collect();
        let image = Subspace::from_vectors(ambient.field(), free.len(), &images);
        let lifts: Vec<Vec<u32>> = image
            .basis_vectors()
            .iter()
            .map(|w| {
                let mut v = vec![0u32; ambient.dim()];
                for (k, &c) in free.iter().enumerate() {
                    v[c] = w[k];
                }
                v
            })
            .collect();
        let d = image.dim();
        let mut gens = Vec::with_capacity(ambient.gens.len());
        for (s, g) in ambient.gens.iter().enumerate() {
            let mut m = FieldMatrix::zeros(ambient.field(), d, d);
            for (c, lift) in lifts.iter().enumerate() {
                let moved = project(&g.apply(lift));
                let Some(coords) = image.coordinates(&moved) else {
                    return input(format!("subquotient is not stable under generator {s}"));
                };
                for (r, &x) in coords.iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            gens.push(m);
        }
        let parity = match ambient.parity() {
            None => None,
            Some(par) => {
                let mut out = Vec::with_capacity(d);
                for lift in &lifts {
                    let pars: Vec<u8> = lift.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| par[i]).collect();
                    if pars.iter().any(|&q| q != pars[0]) {
                        return internal("subquotient basis vector is not homogeneous");
                    }
                    out.push(pars[0]);
                }
                Some(out)
            }
        };
        let module = GModule::from_parts(ambient.group.clone(), ambient.field, d, gens, parity);
        Ok(SubquotientPresentation { ambient: ambient.clone(), sub, killed, module, lifts, image })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Coordinates in the induced module of the class of `v ∈ sub`.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let free = self.killed.complement_indices();
        let r = self.killed.reduce(v);
        let w: Vec<u32> = free.iter().map(|&c| r[c]).collect();
        self.image.coordinates(&w)
    }
}

fn stacked_minus_identity(x: &GModule) -> FieldMatrix {
    let f = x.field();
    let mut data = Vec::with_capacity(x.gens.len() * x.dim * x.dim);
    for g in &x.gens {
        let d = g.try_sub(&FieldMatrix::identity(f, x.dim)).unwrap();
        data.extend_from_slice(d.data());
    }
    FieldMatrix::from_vec(f, x.gens.len() * x.dim, x.dim, data).unwrap()
}

/// Invariant subspace `⋂ ker(φ(s) - 1)` over the generators.
pub fn invariants(x: &GModule) -> Subspace {
    if x.gens.is_empty() {
        return Subspace::full(x.field(), x.dim());
    }
    kernel(&stacked_minus_identity(x))
}

/// Augmentation subspace `Σ im(φ(s) - 1)` over the generators.
pub fn augmentation(x: &GModule) -> Subspace {
    let f = x.field();
    let mut b = EchelonBuilder::new(f, x.dim());
    for g in &x.gens {
        let d = g.try_sub(&FieldMatrix::identity(f, x.dim)).unwrap();
        let t = d.transpose();
        for r in 0..t.rows() {
            b.insert(t.row(r));
            if b.is_full() {
                return b.into_subspace();
            }
        }
    }
    b.into_subspace()
}

/// `H^0(G, X)` as a trivial submodule.
pub fn h0(x: &GModule) -> Result<SubquotientPresentation> {
    SubquotientPresentation::new(x, invariants(x), Subspace::zero(x.field(), x.dim()))
}

/// `H_0(G, X)` as a trivial quotient.
pub fn h_0(x: &GModule) -> Result<SubquotientPresentation> {
    SubquotientPresentation::new(x, Subspace::full(x.field(), x.dim()), augmentation(x))
}

/// Image of `H^0(G, X) -> H_0(G, X)`, realized as `(H^0 + K) / K` with `K` the augmentation.
pub fn triv(x: &GModule) -> Result<SubquotientPresentation> {
    let k = augmentation(x);
    let sub = invariants(x).sum(&k)?;
    SubquotientPresentation::new(x, sub, k)
}

/// `dim Triv_G X`.
pub fn triv_dim(x: &GModule) -> usize {
    let inv = invariants(x);
    let k = augmentation(x);
    inv.dim() - inv.intersect(&k).map(|s| s.dim()).unwrap_or(0)
}

/// `Ind_H^G X` with block `j` spanned by `r_j ⊗ X`.
///
/// Generator `g` sends block `j` to block `i` via `φ_X(r_i^-1 g r_j)` where
/// `g r_j ∈ r_i H`.
pub fn induce(e: &SubgroupEmbedding, x: &GModule) -> Result<GModule> {
    if x.group() != &e.sub {
        return input(format!("module is over {}, expected {}", x.group().name(), e.sub.name()));
    }
    let f = x.field();
    let d = x.dim();
    let n = e.index();
    let action = e.coset_action();
    let mut gens = Vec::with_capacity(action.len());
    for row in &action {
        let mut m = FieldMatrix::zeros(f, n * d, n * d);
        for (j, (i, h)) in row.iter().enumerate() {
            let block = x.element_matrix(h)?;
            for a in 0..d {
                for b in 0..d {
                    m.set(i * d + a, j * d + b, block.get(a, b));
                }
            }
        }
        gens.push(m);
    }
    let parity = x.parity().map(|par| (0..n).flat_map(|_| par.iter().copied()).collect());
    Ok(GModule::from_parts(e.parent.clone(), f, n * d, gens, parity))
}

/// Restriction to a subgroup.
pub fn restrict(e: &SubgroupEmbedding, x: &GModule) -> Result<GModule> {
    if x.group() != &e.parent {
        return input(format!("module is over {}, expected {}", x.group().name(), e.parent.name()));
    }
    restrict_to(x, &e.sub)
}

/// Restriction to any subgroup of the module's group.
pub fn restrict_to(x: &GModule, sub: &PermGroup) -> Result<GModule> {
    if !sub.is_subgroup_of(x.group()) {
        return input(format!("{} is not a subgroup of {}", sub.name(), x.group().name()));
    }
    let gens = if x.group().generators() == sub.generators() {
        x.gens.clone()
    } else {
        sub.generators().iter().map(|g| x.element_matrix(g)).collect::<Result<Vec<_>>>()?
    };
    Ok(GModule::from_parts(sub.clone(), x.field(), x.dim(), gens, x.parity.clone()))
}

/// Pulls back along `c_s: y -> s^-1 y s`, turning an `H`-module into an `sHs^-1`-module.
pub fn conjugate_module(x: &GModule, s: &Perm, target: &PermGroup) -> Result<GModule> {
    let si = s.inverse();
    let gens = target
        .generators()
        .iter()
        .map(|y| x.element_matrix(&si.compose(&y.compose(s))))
        .collect::<Result<Vec<_>>>()?;
    Ok(GModule::from_parts(target.clone(), x.field(), x.dim(), gens, x.parity.clone()))
}

/// Contragredient module, `(φ(g)^-1)^T`.
pub fn dual(x: &GModule) -> GModule {
    let gens = x.gens.iter().map(|g| g.inverse().expect("generators are invertible").transpose()).collect();
    GModule::from_parts(x.group.clone(), x.field, x.dim, gens, x.parity.clone())
}

pub fn direct_sum(x: &GModule, y: &GModule) -> Result<GModule> {
    x.same_context(y)?;
    let gens = x.gens.iter().zip(&y.gens).map(|(a, b)| a.direct_sum(b)).collect();
    let parity = match (&x.parity, &y.parity) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
        _ => None,
    };
    Ok(GModule::from_parts(x.group.clone(), x.field, x.dim + y.dim, gens, parity))
}

/// Diagonal tensor product; basis `x_a ⊗ y_b` at index `a * dim Y + b`.
pub fn tensor(x: &GModule, y: &GModule) -> Result<GModule> {
    x.same_context(y)?;
    let gens = x.gens.iter().zip(&y.gens).map(|(a, b)| a.kron(b)).collect();
    let parity = match (&x.parity, &y.parity) {
        (Some(a), Some(b)) => Some(a.iter().flat_map(|&pa| b.iter().map(move |&pb| (pa + pb) % 2)).collect()),
        _ => None,
    };
    Ok(GModule::from_parts(x.group.clone(), x.field, x.dim * y.dim, gens, parity))
}

/// `M ⊗ X` for an ordinary representation `M`; `M` is the outer index.
pub fn tensor_rep(m: &GModule, x: &GModule) -> Result<GModule> {
    if m.is_super() {
        return input("the coefficient representation must be an ordinary module");
    }
    if m.field() != x.field() || m.group().generators() != x.group().generators() {
        return input("coefficient representation and object live over different groups or fields");
    }
    let gens = m.gens.iter().zip(&x.gens).map(|(a, b)| a.kron(b)).collect();
    let parity = x.parity.as_ref().map(|par| (0..m.dim).flat_map(|_| par.iter().copied()).collect());
    Ok(GModule::from_parts(x.group.clone(), x.field, m.dim * x.dim, gens, parity))
}

/// Jordan block sizes of a module over `C_p`, largest first.
pub fn decompose_cp(x: &GModule) -> Result<Vec<usize>> {
    let p = x.p() as u128;
    if x.group().order() != p {
        return input(format!("decompose_cp needs a group of order {p}; {} has order {}", x.group().name(), x.group().order()));
    }
    let Some(k) = x.group().generators().iter().position(|g| !g.is_identity()) else {
        return internal("group of prime order without a nontrivial generator");
    };
    Ok(jordan_sizes(&x.gens[k].try_sub(&FieldMatrix::identity(x.field(), x.dim()))?))
}

/// Jordan block sizes of a nilpotent matrix from the ranks of its powers.
pub fn jordan_sizes(n: &FieldMatrix) -> Vec<usize> {
    let d = n.rows();
    let mut ranks = vec![d];
    let mut pw = FieldMatrix::identity(n.field(), d);
    while *ranks.last().unwrap() > 0 {
        pw = pw.mul_unchecked(n);
        let r = pw.rank();
        assert!(r < *ranks.last().unwrap(), "matrix is not nilpotent");
        ranks.push(r);
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let mut sizes = Vec::new();
    for k in (1..ranks.len()).rev() {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_k1 = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..(at_least_k - at_least_k1) {
            sizes.push(k);
        }
    }
    sizes
}

/// Basis of `Hom_G(X, Y)` as `dim Y x dim X` matrices.
pub fn hom_basis(x: &GModule, y: &GModule) -> Result<Vec<FieldMatrix>> {
    x.same_context(y)?;
    let f = x.field();
    let (dx, dy) = (x.dim, y.dim);
    let unknowns = dx * dy;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, b) in x.gens.iter().zip(&y.gens) {
        // (B F - F A)[r][c] = Σ_k B[r][k] F[k][c] - Σ_k F[r][k] A[k][c]
        for r in 0..dy {
            for c in 0..dx {
                let mut eq = vec![0u32; unknowns];
                for k in 0..dy {
                    let v = b.get(r, k);
                    if v != 0 {
                        eq[k * dx + c] = f.add(eq[k * dx + c], v);
                    }
                }
                for k in 0..dx {
                    let v = a.get(k, c);
                    if v != 0 {
                        eq[r * dx + k] = f.sub(eq[r * dx + k], v);
                    }
                }
                if eq.iter().any(|&e| e != 0) {
                    rows.push(eq);
                }
            }
        }
    }
    if x.is_super() {
        for r in 0..dy {
            for c in 0..dx {
                if y.parity_of(r) != x.parity_of(c) {
                    let mut eq = vec![0u32; unknowns];
                    eq[r * dx + c] = 1;
                    rows.push(eq);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        Subspace::full(f, unknowns)
    } else {
        kernel(&FieldMatrix::from_row_vectors(f, unknowns, &rows))
    };
    Ok(sol.basis_vectors().into_iter().map(|v| FieldMatrix::from_vec(f, dy, dx, v).unwrap()).collect())
}

pub fn hom_dim(x: &GModule, y: &GModule) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoResult {
    /// An invertible intertwiner.
    Isomorphic(GModMorphism),
    /// Definitively not isomorphic; the reason names the invariant that differs.
    NotIsomorphic(String),
    /// No certificate within the search bounds.
    NotFound { candidates_tried: u64 },
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Exhaustive scans are used when the Hom space has at most this many elements.
pub const ISO_EXHAUSTIVE_CAP: u64 = 1_000_000;
/// Random combinations tried otherwise.
pub const ISO_RANDOM_TRIES: u64 = 10_000;

/// Searches `Hom_G(X, Y)` for an isomorphism.
pub fn iso_test(x: &GModule, y: &GModule) -> Result<IsoResult> {
    x.same_context(y)?;
    if x.dim != y.dim {
        return Ok(IsoResult::NotIsomorphic(format!("dimensions differ: {} vs {}", x.dim, y.dim)));
    }
    if x.super_dim() != y.super_dim() {
        return Ok(IsoResult::NotIsomorphic("graded dimensions differ".into()));
    }
    if x.gens == y.gens && x.parity == y.parity {
        return Ok(IsoResult::Isomorphic(GModMorphism::identity(x)));
    }
    let basis = hom_basis(x, y)?;
    let back = hom_dim(y, x)?;
    if basis.len() != back {
        return Ok(IsoResult::NotIsomorphic(format!("dim Hom(X,Y) = {} but dim Hom(Y,X) = {back}", basis.len())));
    }
    if basis.is_empty() {
        return Ok(IsoResult::NotIsomorphic("no nonzero homomorphisms".into()));
    }
    let f = x.field();
    let p = f.p() as u64;
    let k = basis.len();
    let combine = |coeffs: &[u32]| -> FieldMatrix {
        let mut acc = FieldMatrix::zeros(f, y.dim, x.dim);
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                acc = acc.try_add(&b.scale(*c)).unwrap();
            }
        }
        acc
    };
    let found = |m: FieldMatrix| IsoResult::Isomorphic(GModMorphism { source: x.clone(), target: y.clone(), matrix: m });
    let mut tried = 0u64;
    for b in &basis {
        tried += 1;
        if b.is_invertible() {
            return Ok(found(b.clone()));
        }
    }
    let total = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total <= ISO_EXHAUSTIVE_CAP as u128 {
        let mut coeffs = vec![0u32; k];
        for _ in 1..total {
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c == p as u32 {
                    *c = 0;
                } else {
                    break;
                }
            }
            let m = combine(&coeffs);
            if m.is_invertible() {
                return Ok(found(m));
            }
        }
        return Ok(IsoResult::NotIsomorphic(format!("exhaustive scan of all {total} homomorphisms found no isomorphism")));
    }
    let mut rng = SplitMix64::new(0x5EED);
    for _ in 0..ISO_RANDOM_TRIES {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.below(p) as u32).collect();
        tried += 1;
        let m = combine(&coeffs);
        if m.is_invertible() {
            return Ok(found(m));
        }
    }
    Ok(IsoResult::NotFound { candidates_tried: tried })
}

/// Resource guard for dense constructions.
pub fn check_cap(dim: usize, cap: usize, what: &str) -> Result<()> {
    if dim > cap {
        return resource(format!("{what} has dimension {dim}, above the cap {cap}"));
    }
    Ok(())
}
