//! Frobenius twists `Fr₊^(j)`, `Fr₋^(j)`, `Fr_in` and the external twist, the
//! bracket invariants `[X]₁`, `[X]₁̄` and the witnesses `α^n`, `θ_Σ`.
//!
//! Twists are `Triv` of a place action on `⊗^{p^j} X`. The place group is the
//! wreath tower `Q_j` by default; `S_{p^j}` gives the same `Triv` and is kept
//! as the cross-check for small instances.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, internal, Result};
use crate::ffla::{FieldMatrix, PrimeField, Subspace};
use crate::permgrp::{tower_generators, Perm, PermGroup, TowerKind};
use crate::repmod::{iso_test, unipotent_block, GModMorphism, GModule, SubquotientPresentation};
use crate::sympow::{
    adjacent_transpositions, lambda_dim_super, map_word, sym_dim_super, symmetric_decomposition, triv_dim_fast, gamma_lambda_dim,
    sym_power, Part, Partition, PlaceDecomposition,
};

/// Largest tensor power on which the `S_{p^j}` route is recomputed as a cross-check.
pub const CROSS_CHECK_WORDS: usize = 4096;

/// Largest module on which isomorphism certificates are searched during cross-checks.
pub const ISO_CHECK_DIM: usize = 6;

/// Budget for materializing `Sym^{p^j} X` to record the realization.
pub const REALIZATION_BUDGET: u128 = 50_000_000;

/// `j ≤ 2` for `p ≤ 3` and `j ≤ 1` otherwise.
pub fn default_max_j(p: u32) -> u32 {
    if p <= 3 {
        2
    } else {
        1
    }
}

/// Which generating set of the place group was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shortcut {
    #[serde(rename = "S_{p^j}")]
    Symmetric,
    #[serde(rename = "Q_j")]
    Wreath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Plus,
    Minus,
}

/// A twisted object together with how it was obtained.
#[derive(Clone, Debug)]
pub struct TwistResult {
    pub object: GModule,
    /// For `Fr₊`, the object as a submodule of `Sym^{p^j} X` when that module is affordable.
    pub realization: Option<SubquotientPresentation>,
    pub shortcut_used: Shortcut,
    /// Whether the `S_{p^j}` route was recomputed and agreed.
    pub cross_checked: bool,
    /// The tensor power `p^j`.
    pub n: usize,
}

fn twist_degree(p: u32, j: u32) -> Result<usize> {
    match (p as usize).checked_pow(j) {
        Some(n) if n <= 64 => Ok(n),
        _ => crate::error::resource(format!("p^j = {p}^{j} is beyond any tensor power cap")),
    }
}

fn place_generators(p: u32, j: u32, shortcut: Shortcut) -> Vec<Perm> {
    if j == 0 {
        return vec![];
    }
    match shortcut {
        Shortcut::Wreath => tower_generators(p as usize, j, TowerKind::Q),
        Shortcut::Symmetric => adjacent_transpositions((p as usize).pow(j)),
    }
}

fn coefficients(field: PrimeField, gens: &[Perm], sign: Sign) -> Vec<FieldMatrix> {
    gens.iter()
        .map(|g| match sign {
            Sign::Plus => FieldMatrix::identity(field, 1),
            Sign::Minus => FieldMatrix::scalar(field, 1, g.sign(field).value()),
        })
        .collect()
}

fn decomposition(x: &GModule, j: u32, sign: Sign, shortcut: Shortcut, cap: usize) -> Result<PlaceDecomposition> {
    let n = twist_degree(x.p(), j)?;
    let gens = place_generators(x.p(), j, shortcut);
    let coeff = coefficients(x.field(), &gens, sign);
    PlaceDecomposition::new(x, n, &gens, &coeff, cap)
}

fn words(x: &GModule, n: usize) -> Option<usize> {
    (x.dim() as u128).checked_pow(n as u32).filter(|&w| w <= usize::MAX as u128).map(|w| w as usize)
}

/// `(even, odd)` dimension of `Fr₊^(j) X`, from the `Q_j` decomposition without residual actions.
pub fn fr_plus_super_dim(x: &GModule, j: u32, cap: usize) -> Result<(usize, usize)> {
    if x.dim() == 0 {
        return Ok((0, 0));
    }
    Ok(decomposition(x, j, Sign::Plus, Shortcut::Wreath, cap)?.super_dim(Part::Triv))
}

/// `(even, odd)` dimension of `Fr₋^(j) X`.
pub fn fr_minus_super_dim(x: &GModule, j: u32, cap: usize) -> Result<(usize, usize)> {
    require_odd(x.field())?;
    if x.dim() == 0 {
        return Ok((0, 0));
    }
    Ok(decomposition(x, j, Sign::Minus, Shortcut::Wreath, cap)?.super_dim(Part::Triv))
}

fn require_odd(field: PrimeField) -> Result<()> {
    if field.p() == 2 {
        return input("the skew symmetric Frobenius twist is only defined for p > 2");
    }
    Ok(())
}

fn zero_like(x: &GModule) -> GModule {
    let parity = x.is_super().then(Vec::new);
    GModule::from_parts(x.group().clone(), x.field(), 0, vec![FieldMatrix::zeros(x.field(), 0, 0); x.group().num_generators()], parity)
}

/// `Fr₋^(j) X` or `Fr₊^(j) X` computed on the `Triv` carrier, cross-checked against `S_{p^j}`.
fn twist_on_carrier(x: &GModule, j: u32, sign: Sign, cap: usize) -> Result<(GModule, bool)> {
    let n = twist_degree(x.p(), j)?;
    if x.dim() == 0 {
        return Ok((zero_like(x), false));
    }
    let dec = decomposition(x, j, sign, Shortcut::Wreath, cap)?;
    let object = dec.module(Part::Triv)?;
    let mut checked = false;
    if words(x, n).is_some_and(|w| w <= CROSS_CHECK_WORDS) {
        let full = decomposition(x, j, sign, Shortcut::Symmetric, cap)?;
        if full.super_dim(Part::Triv) != dec.super_dim(Part::Triv) {
            return internal(format!(
                "Triv over Q_{j} and over S_{n} disagree: {:?} vs {:?}",
                dec.super_dim(Part::Triv),
                full.super_dim(Part::Triv)
            ));
        }
        if object.dim() <= ISO_CHECK_DIM && !object.is_trivial_action() {
            let other = full.module(Part::Triv)?;
            if !iso_test(&object, &other)?.is_isomorphic() {
                return internal(format!("Triv over Q_{j} and over S_{n} are not isomorphic"));
            }
        }
        checked = true;
    }
    Ok((object, checked))
}

/// `Fr₊^(j) X` as a subobject of `Sym^{p^j} X`.
#[derive(Clone, Debug)]
pub struct SymRealization {
    pub sym: PlaceDecomposition,
    /// Homogeneous basis in `Sym^{p^j} X` coordinates, even vectors first.
    pub basis: Vec<Vec<u32>>,
    pub parity: Vec<u8>,
    span: Subspace,
}

impl SymRealization {
    pub fn new(x: &GModule, j: u32, cap: usize) -> Result<Self> {
        let n = twist_degree(x.p(), j)?;
        let f = x.field();
        let sym = symmetric_decomposition(x, n, cap)?;
        let sym_dim = sym.dim(Part::Coinvariants);
        let dec = decomposition(x, j, Sign::Plus, Shortcut::Wreath, cap)?;
        let parities = dec.orbits.iter().flat_map(|o| std::iter::repeat_n(o.parity, o.triv_dim())).collect::<Vec<u8>>();
        let mut by_parity: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
        for (idx, &par) in parities.iter().enumerate() {
            let v = sym.project(&dec.lift_basis(Part::Triv, idx));
            by_parity[par as usize].push(v);
        }
        let mut basis = Vec::new();
        let mut parity = Vec::new();
        for (par, vecs) in by_parity.iter().enumerate() {
            let s = Subspace::from_vectors(f, sym_dim, vecs);
            if s.dim() != vecs.len() {
                return internal(format!("Q_{j}-invariant lifts project to a {}-dim image, expected {}", s.dim(), vecs.len()));
            }
            basis.extend(s.basis_vectors());
            parity.extend(std::iter::repeat_n(par as u8, s.dim()));
        }
        if words(x, n).is_some_and(|w| w <= CROSS_CHECK_WORDS) {
            let direct = Subspace::from_vectors(f, sym_dim, &sym.triv_in_coinvariants());
            let ours = Subspace::from_vectors(f, sym_dim, &basis);
            if direct != ours {
                return internal("image of Γ -> Sym differs from the projected Q_j invariants");
            }
        }
        let span = Subspace::from_vectors(f, sym_dim, &basis);
        Ok(SymRealization { sym, basis, parity, span })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Class of a sparse tensor `Σ c_w w` in `Sym` coordinates.
    fn class_of(&self, terms: &HashMap<usize, u32>) -> Vec<u32> {
        let t: Vec<(usize, Vec<u32>)> = terms.iter().filter(|(_, &c)| c != 0).map(|(&w, &c)| (w, vec![c])).collect();
        self.sym.project(&t)
    }

    /// `Sym^n(f)` on this realization, written in the basis of `target`.
    pub fn map_to(&self, f: &FieldMatrix, target: &SymRealization) -> Result<FieldMatrix> {
        let field = f.field();
        let dim_coinv = self.sym.dim(Part::Coinvariants);
        let mut mat = FieldMatrix::zeros(field, target.dim(), self.dim());
        let reps: Vec<Vec<(usize, Vec<u32>)>> = (0..dim_coinv).map(|i| self.sym.lift_basis(Part::Coinvariants, i)).collect();
        let tp = &self.sym.tensor;
        for (col, v) in self.basis.iter().enumerate() {
            let mut acc: HashMap<usize, u32> = HashMap::new();
            for (i, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (w, mv) in &reps[i] {
                    let s = field.mul(c, mv[0]);
                    if s == 0 {
                        continue;
                    }
                    for (u, e) in map_word(f, &tp.digits(*w)) {
                        let t = acc.entry(u).or_insert(0);
                        *t = field.add(*t, field.mul(s, e));
                    }
                }
            }
            let image = target.class_of(&acc);
            let Some(coords) = target.span.coordinates(&image) else {
                return internal("Sym^n(f) does not map Fr₊ into Fr₊");
            };
            // span coordinates are in the span's echelon basis; convert to our basis
            let ours = target.to_basis_coords(&coords)?;
            for (r, x) in ours.into_iter().enumerate() {
                mat.set(r, col, x);
            }
        }
        Ok(mat)
    }

    fn to_basis_coords(&self, echelon: &[u32]) -> Result<Vec<u32>> {
        let f = self.span.field();
        let v: Vec<u32> = {
            let b = self.span.basis();
            let mut out = vec![0u32; self.span.ambient_dim()];
            for (i, &c) in echelon.iter().enumerate() {
                for (k, &x) in b.row(i).iter().enumerate() {
                    out[k] = f.add(out[k], f.mul(c, x));
                }
            }
            out
        };
        let m = FieldMatrix::from_row_vectors(f, self.span.ambient_dim(), &self.basis).transpose();
        match crate::ffla::solve(&m, &v)? {
            Some(x) => Ok(x),
            None => internal("realization basis does not span its own image"),
        }
    }

    /// The twisted module with the action of `G` read off inside `Sym`.
    pub fn module(&self, x: &GModule) -> Result<GModule> {
        let gens = x.generator_matrices().iter().map(|g| self.map_to(g, self)).collect::<Result<Vec<_>>>()?;
        let parity = x.is_super().then(|| self.parity.clone());
        GModule::with_dim(x.group().clone(), x.field(), self.dim(), gens, parity)
    }
}

/// `Fr₊^(j) X = Triv_{S_{p^j}}(⊗^{p^j} X)`, presented inside `Sym^{p^j} X`.
pub fn fr_plus(x: &GModule, j: u32, cap: usize) -> Result<TwistResult> {
    let n = twist_degree(x.p(), j)?;
    if x.dim() == 0 {
        return Ok(TwistResult { object: zero_like(x), realization: None, shortcut_used: Shortcut::Wreath, cross_checked: false, n });
    }
    let (carrier, mut checked) = twist_on_carrier(x, j, Sign::Plus, cap)?;
    let real = SymRealization::new(x, j, cap)?;
    let object = real.module(x)?;
    if object.super_dim() != carrier.super_dim() {
        return internal("Sym-side and Triv-side twists differ in dimension");
    }
    if !x.is_super() && object.dim() != triv_dim_fast(x.dim(), n, x.p() as usize) {
        return internal("Fr₊ dimension disagrees with the multinomial count");
    }
    if object.dim() <= ISO_CHECK_DIM && !object.is_trivial_action() {
        if !iso_test(&object, &carrier)?.is_isomorphic() {
            return internal("Sym-side and Triv-side twists are not isomorphic");
        }
        checked = true;
    }
    let realization = if real.sym.residual_cost(Part::Coinvariants) <= REALIZATION_BUDGET {
        let sym = real.sym.module(Part::Coinvariants)?;
        let sub = Subspace::from_vectors(x.field(), sym.dim(), &real.basis);
        Some(SubquotientPresentation::new(&sym, sub, Subspace::zero(x.field(), sym.dim()))?)
    } else {
        None
    };
    Ok(TwistResult { object, realization, shortcut_used: Shortcut::Wreath, cross_checked: checked, n })
}

/// `Fr₊^(j)(f)`, the restriction of `Sym^{p^j}(f)`, between the objects returned by [`fr_plus`].
pub fn fr_plus_mor(f: &GModMorphism, j: u32, cap: usize) -> Result<GModMorphism> {
    let (x, y) = (&f.source, &f.target);
    let src = fr_plus(x, j, cap)?.object;
    let tgt = fr_plus(y, j, cap)?.object;
    if x.dim() == 0 || y.dim() == 0 {
        return GModMorphism::new(src.clone(), tgt.clone(), FieldMatrix::zeros(x.field(), tgt.dim(), src.dim()));
    }
    let rx = SymRealization::new(x, j, cap)?;
    let ry = SymRealization::new(y, j, cap)?;
    let m = rx.map_to(&f.matrix, &ry)?;
    GModMorphism::new(src, tgt, m)
}

/// `Fr₋^(j) X = Triv_{S_{p^j}}(sgn ⊗ ⊗^{p^j} X)`, for `p > 2`.
pub fn fr_minus(x: &GModule, j: u32, cap: usize) -> Result<TwistResult> {
    require_odd(x.field())?;
    let n = twist_degree(x.p(), j)?;
    let (object, checked) = twist_on_carrier(x, j, Sign::Minus, cap)?;
    Ok(TwistResult { object, realization: None, shortcut_used: Shortcut::Wreath, cross_checked: checked, n })
}

fn cyclic_place(p: usize) -> Vec<Perm> {
    if p < 2 {
        return vec![];
    }
    vec![Perm::cycle(p, &(0..p).collect::<Vec<_>>()).expect("valid cycle")]
}

/// `Fr_in X = Triv_{C_p}(⊗^p X)` for the cyclic place action of the `p`-cycle.
pub fn fr_internal(x: &GModule, cap: usize) -> Result<TwistResult> {
    let p = x.p() as usize;
    if x.dim() == 0 {
        return Ok(TwistResult { object: zero_like(x), realization: None, shortcut_used: Shortcut::Symmetric, cross_checked: false, n: p });
    }
    let gens = cyclic_place(p);
    let coeff = coefficients(x.field(), &gens, Sign::Plus);
    let object = PlaceDecomposition::new(x, p, &gens, &coeff, cap)?.module(Part::Triv)?;
    Ok(TwistResult { object, realization: None, shortcut_used: Shortcut::Symmetric, cross_checked: false, n: p })
}

/// `⊕_{i=1}^{p-1} Triv_{C_p}(M_i ⊗ ⊗^p X) ⊠ M̄_i`, stored by component.
#[derive(Clone, Debug)]
pub struct BoxedVerObject {
    pub p: u32,
    /// `components[i - 1]` is the coefficient of `M̄_i`.
    pub components: Vec<GModule>,
}

impl BoxedVerObject {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim()).collect()
    }
}

/// The external Frobenius twist.
pub fn fr_external(x: &GModule, cap: usize) -> Result<BoxedVerObject> {
    let p = x.p() as usize;
    let f = x.field();
    let gens = cyclic_place(p);
    let mut components = Vec::new();
    for i in 1..p {
        if x.dim() == 0 {
            components.push(zero_like(x));
            continue;
        }
        let coeff = vec![unipotent_block(f, i)];
        let dec = PlaceDecomposition::new(x, p, &gens, &coeff, cap)?;
        components.push(dec.module(Part::Triv)?);
    }
    Ok(BoxedVerObject { p: x.p(), components })
}

/// Value of a bracket: finite or not reached within the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketValue {
    Finite(usize),
    ExceedsBound,
}

impl Serialize for BracketValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BracketValue::Finite(n) => s.serialize_u64(*n as u64),
            BracketValue::ExceedsBound => s.serialize_str("exceeds bound"),
        }
    }
}

impl BracketValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            BracketValue::Finite(n) => Some(n),
            BracketValue::ExceedsBound => None,
        }
    }
}

/// One row of a bracket table.
#[derive(Clone, Debug, Serialize)]
pub struct BracketRow {
    pub j: u32,
    /// `(even, odd)` dimension of the twist.
    pub twist_dim: (usize, usize),
    /// `dims[n]` for `n = 0..=max_n`.
    pub dims: Vec<u128>,
}

impl BracketRow {
    /// Largest `n` with a nonzero entry before the first vanishing one.
    fn last_nonzero(&self) -> Option<usize> {
        self.dims.iter().position(|&d| d == 0).map(|z| z - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    One,
    Bar,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketCertificate {
    pub kind: BracketKind,
    pub value: BracketValue,
    pub max_j: u32,
    pub max_n: usize,
    pub table: Vec<BracketRow>,
}

/// The default `max_n`: `dim X` plus the largest twist dimension plus one.
fn default_max_n(x: &GModule, twist_dims: &[(usize, usize)]) -> usize {
    x.dim() + twist_dims.iter().map(|(e, o)| e + o).max().unwrap_or(0) + 1
}

fn certificate(kind: BracketKind, rows: Vec<BracketRow>, max_j: u32, max_n: usize) -> BracketCertificate {
    let value = rows
        .iter()
        .filter_map(|r| r.last_nonzero())
        .min()
        .map_or(BracketValue::ExceedsBound, BracketValue::Finite);
    BracketCertificate { kind, value, max_j, max_n, table: rows }
}

/// `[X]₁ = sup{n : Λ^n Fr₊^(j) X ≠ 0 for all j}`, truncated at `max_j`, `max_n`.
pub fn bracket_one(x: &GModule, max_j: u32, max_n: Option<usize>, cap: usize) -> Result<BracketCertificate> {
    let dims = (0..=max_j).map(|j| fr_plus_super_dim(x, j, cap)).collect::<Result<Vec<_>>>()?;
    let max_n = max_n.unwrap_or_else(|| default_max_n(x, &dims));
    let rows = dims
        .iter()
        .enumerate()
        .map(|(j, &(e, o))| BracketRow {
            j: j as u32,
            twist_dim: (e, o),
            dims: (0..=max_n).map(|n| lambda_dim_super(e, o, n, x.p())).collect(),
        })
        .collect();
    Ok(certificate(BracketKind::One, rows, max_j, max_n))
}

/// `[X]₁̄ = sup{n : Γ^n Fr₋^(j) X ≠ 0 for all j}`, for `p > 2`.
pub fn bracket_bar(x: &GModule, max_j: u32, max_n: Option<usize>, cap: usize) -> Result<BracketCertificate> {
    require_odd(x.field())?;
    let dims = (0..=max_j).map(|j| fr_minus_super_dim(x, j, cap)).collect::<Result<Vec<_>>>()?;
    let max_n = max_n.unwrap_or_else(|| default_max_n(x, &dims));
    let rows = dims
        .iter()
        .enumerate()
        .map(|(j, &(e, o))| BracketRow { j: j as u32, twist_dim: (e, o), dims: (0..=max_n).map(|n| sym_dim_super(e, o, n)).collect() })
        .collect();
    Ok(certificate(BracketKind::Bar, rows, max_j, max_n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    HoldsUpToBound,
    Fails,
    /// No `n ≤ max_n` with `Λ^n X = 0`.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// `(n, j)` with `Λ^n Fr₊^(j) X = 0` but `Λ^n X ≠ 0`.
    pub witness: Option<(usize, u32)>,
    pub value: BracketValue,
    pub bound_j: u32,
    pub bound_n: usize,
    pub table: Vec<BracketRow>,
    pub definitive: bool,
}

/// Bounded check of the locally-free criterion: some `Λ^n X` vanishes, and
/// whenever `Λ^n Fr₊^(j) X = 0` so does `Λ^n X`.
pub fn check_locally_free(x: &GModule, max_j: u32, max_n: Option<usize>, cap: usize) -> Result<Verdict> {
    let cert = bracket_one(x, max_j, max_n, cap)?;
    let base = &cert.table[0].dims;
    let mut witness = None;
    'outer: for row in &cert.table[1..] {
        for (n, &d) in row.dims.iter().enumerate() {
            if d == 0 && base[n] != 0 {
                witness = Some((n, row.j));
                break 'outer;
            }
        }
    }
    let status = if witness.is_some() {
        VerdictStatus::Fails
    } else if base.contains(&0) {
        VerdictStatus::HoldsUpToBound
    } else {
        VerdictStatus::Undetermined
    };
    Ok(Verdict {
        status,
        witness,
        value: cert.value,
        bound_j: max_j,
        bound_n: cert.max_n,
        table: cert.table,
        definitive: status == VerdictStatus::Fails,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperVerdict {
    pub holds: bool,
    pub bracket_one: BracketValue,
    pub bracket_bar: BracketValue,
    /// The rectangle `(([X]₁̄ + 1)^([X]₁ + 1))`.
    pub partition: Option<Vec<usize>>,
    pub gamma_dim: Option<usize>,
    pub bound_j: u32,
    pub definitive: bool,
}

/// Bounded check of the locally super-free criterion via `Γ_λ X = 0` for the bracket rectangle.
pub fn check_locally_super_free(x: &GModule, max_j: u32, cap: usize) -> Result<SuperVerdict> {
    require_odd(x.field())?;
    let one = bracket_one(x, max_j, None, cap)?.value;
    let bar = bracket_bar(x, max_j, None, cap)?.value;
    let (Some(m), Some(n)) = (one.finite(), bar.finite()) else {
        return Ok(SuperVerdict { holds: false, bracket_one: one, bracket_bar: bar, partition: None, gamma_dim: None, bound_j: max_j, definitive: false });
    };
    let lambda = Partition::rectangle(n + 1, m + 1);
    let xs = crate::superrep::as_super(x)?;
    let d = gamma_lambda_dim(&lambda, &xs, cap)?;
    Ok(SuperVerdict {
        holds: d == 0,
        bracket_one: one,
        bracket_bar: bar,
        partition: Some(lambda.parts().to_vec()),
        gamma_dim: Some(d),
        bound_j: max_j,
        // a nonzero Γ_λ refutes the criterion only if the brackets are exact
        definitive: false,
    })
}

/// `α^n: 𝟙 -> Sym^n X`, the class of `α(1)^{⊗n}`.
#[derive(Clone, Debug)]
pub struct AlphaPower {
    /// Coordinates in the coinvariant basis of `Sym^n X`.
    pub class: Vec<u32>,
    pub nonzero: bool,
    pub morphism: Option<GModMorphism>,
}

pub fn alpha_power(alpha: &GModMorphism, n: usize, cap: usize) -> Result<AlphaPower> {
    let x = &alpha.target;
    if alpha.source.dim() != 1 || !alpha.source.is_trivial_action() || alpha.rank() != 1 {
        return input("α must be a monomorphism from the unit");
    }
    let f = x.field();
    let v = alpha.matrix.column(0);
    let dec = symmetric_decomposition(x, n, cap)?;
    let terms: Vec<(usize, Vec<u32>)> =
        crate::sympow::expand_product(f, &vec![v; n]).into_iter().map(|(w, c)| (w, vec![c])).collect();
    let class = dec.project(&terms);
    let nonzero = class.iter().any(|&c| c != 0);
    let morphism = if dec.residual_cost(Part::Coinvariants) <= REALIZATION_BUDGET {
        let sym = dec.module(Part::Coinvariants)?;
        let unit = GModule::trivial(x.group().clone(), f, 1);
        let unit = if x.is_super() { unit.with_parity(Some(vec![0]))? } else { unit };
        Some(GModMorphism::new(unit, sym, FieldMatrix::from_row_vectors(f, 1, &class.iter().map(|&c| vec![c]).collect::<Vec<_>>()))?)
    } else {
        None
    };
    Ok(AlphaPower { class, nonzero, morphism })
}

/// A short exact sequence `0 -> U -> V -> W -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub inclusion: GModMorphism,
    pub projection: GModMorphism,
}

impl ShortExact {
    pub fn new(inclusion: GModMorphism, projection: GModMorphism) -> Result<Self> {
        if inclusion.target.dim() != projection.source.dim() {
            return input("the two maps are not composable");
        }
        if !inclusion.is_injective() || !projection.is_surjective() {
            return input("the sequence is not exact at its ends");
        }
        if !projection.matrix.try_mul(&inclusion.matrix)?.is_zero() {
            return input("the composite is not zero");
        }
        if inclusion.source.dim() + projection.target.dim() != inclusion.target.dim() {
            return input("the sequence is not exact in the middle");
        }
        Ok(ShortExact { inclusion, projection })
    }

    /// The split sequence `0 -> U -> U ⊕ W -> W -> 0`.
    pub fn split(u: &GModule, w: &GModule) -> Result<Self> {
        let v = crate::repmod::direct_sum(u, w)?;
        let f = u.field();
        let (a, b) = (u.dim(), w.dim());
        let mut i = FieldMatrix::zeros(f, a + b, a);
        let mut q = FieldMatrix::zeros(f, b, a + b);
        for k in 0..a {
            i.set(k, k, 1);
        }
        for k in 0..b {
            q.set(k, a + k, 1);
        }
        Self::new(GModMorphism::new(u.clone(), v.clone(), i)?, GModMorphism::new(v, w.clone(), q)?)
    }
}

/// Graded dimensions of `θ^n_Σ: Sym^n(U ⊕ W) -> gr Sym^n V` for the `U`-degree filtration.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub holds: bool,
    /// `dim gr_k Sym^n V`, `k` = number of factors from `U`.
    pub graded_v: Vec<usize>,
    /// `dim Sym^k U · dim Sym^{n-k} W`.
    pub graded_split: Vec<usize>,
}

pub fn check_theta(sigma: &ShortExact, n: usize, cap: usize) -> Result<ThetaReport> {
    let u = &sigma.inclusion.source;
    let v = &sigma.inclusion.target;
    let w = &sigma.projection.target;
    let f = v.field();
    let d = v.dim();
    // adapted basis: images of U first, then standard vectors completing it
    let mut basis: Vec<Vec<u32>> = (0..u.dim()).map(|c| sigma.inclusion.matrix.column(c)).collect();
    let mut span = Subspace::from_vectors(f, d, &basis);
    for k in 0..d {
        if span.dim() == d {
            break;
        }
        let mut e = vec![0u32; d];
        e[k] = 1;
        if !span.contains(&e)? {
            basis.push(e);
            span = Subspace::from_vectors(f, d, &basis);
        }
    }
    let dec = symmetric_decomposition(v, n, cap)?;
    let sym_dim = dec.dim(Part::Coinvariants);
    let a = u.dim();
    // monomials b_{i_1} .. b_{i_n} with i_1 <= .. <= i_n, grouped by U-degree
    let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n + 1];
    let mut idx = vec![0usize; n];
    loop {
        let deg = idx.iter().filter(|&&i| i < a).count();
        let factors: Vec<Vec<u32>> = idx.iter().map(|&i| basis[i].clone()).collect();
        let terms: Vec<(usize, Vec<u32>)> =
            crate::sympow::expand_product(f, &factors).into_iter().map(|(w, c)| (w, vec![c])).collect();
        by_degree[deg].push(dec.project(&terms));
        // next weakly increasing index tuple
        let Some(pos) = (0..n).rev().find(|&k| idx[k] + 1 < d) else { break };
        let val = idx[pos] + 1;
        for k in pos..n {
            idx[k] = val;
        }
    }
    let mut filtration = Vec::with_capacity(n + 2);
    let mut acc: Vec<Vec<u32>> = Vec::new();
    filtration.push(0usize);
    for k in (0..=n).rev() {
        acc.extend(by_degree[k].iter().cloned());
        filtration.push(Subspace::from_vectors(f, sym_dim, &acc).dim());
    }
    // filtration[i] = dim F_{n+1-i}; gr_k = dim F_k - dim F_{k+1}
    let graded_v: Vec<usize> = (0..=n).map(|k| filtration[n + 1 - k] - filtration[n - k]).collect();
    let graded_split = (0..=n)
        .map(|k| Ok(sym_power(u, k, cap)?.dim() * sym_power(w, n - k, cap)?.dim()))
        .collect::<Result<Vec<usize>>>()?;
    Ok(ThetaReport { holds: graded_v == graded_split, graded_v, graded_split })
}

/// Composite `Fr₊ ∘ .. ∘ Fr₊` (`j` times) of the first twist.
pub fn fr_plus_iterated(x: &GModule, j: u32, cap: usize) -> Result<GModule> {
    let mut y = x.clone();
    for _ in 0..j {
        y = fr_plus(&y, 1, cap)?.object;
    }
    Ok(y)
}

/// The place generators used for `Fr^(j)` on the given route; exposed for the `PropGreen` checks.
pub fn twist_place_generators(p: u32, j: u32, shortcut: Shortcut) -> Vec<Perm> {
    place_generators(p, j, shortcut)
}

/// `dim Triv` of the untwisted place action of the given route on `⊗^{p^j} X`.
pub fn triv_dim_on_route(x: &GModule, j: u32, shortcut: Shortcut, cap: usize) -> Result<usize> {
    Ok(decomposition(x, j, Sign::Plus, shortcut, cap)?.dim(Part::Triv))
}

/// `Triv` module of the untwisted place action of the given route on `⊗^{p^j} X`.
pub fn triv_module_on_route(x: &GModule, j: u32, shortcut: Shortcut, cap: usize) -> Result<GModule> {
    decomposition(x, j, Sign::Plus, shortcut, cap)?.module(Part::Triv)
}

/// The group generated by the place generators of a route.
pub fn route_group(p: u32, j: u32, shortcut: Shortcut) -> Result<PermGroup> {
    let n = twist_degree(p, j)?;
    PermGroup::new(n, place_generators(p, j, shortcut), format!("{shortcut:?}"))
}
