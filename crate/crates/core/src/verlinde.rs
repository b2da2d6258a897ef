//! The semisimplification `Rep C_p -> ver_p`.
//!
//! A module over `C_p` is split explicitly into Jordan blocks `M_k`. A
//! morphism then induces, for each `k < p`, a scalar matrix on multiplicity
//! spaces: the `(a, b)` entry is `tr(π_a f ι_b) / k`, which is the image of
//! `π_a f ι_b ∈ End(M_k)` modulo its nilpotent (negligible) part. Blocks of
//! size `p` are negligible and dropped.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{input, internal, Result};
use crate::ffla::{EchelonBuilder, FieldMatrix, PrimeField, Subspace};
use crate::permgrp::{Perm, PermGroup};
use crate::repmod::{decompose_cp, dual, hom_basis, tensor, triv_dim, unipotent_block, GModule};
use crate::sympow::adjacent_transpositions;

/// An object `⊕ M̄_i^{m_i}` of `ver_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerObject {
    pub p: u32,
    /// `multiplicities[i - 1] = m_i` for `1 <= i < p`.
    pub multiplicities: Vec<usize>,
}

impl VerObject {
    pub fn zero(p: u32) -> Self {
        VerObject { p, multiplicities: vec![0; p as usize - 1] }
    }

    pub fn simple(p: u32, i: usize) -> Result<Self> {
        if i == 0 || i >= p as usize {
            return input(format!("simple objects of ver_{p} are M̄_1 .. M̄_{}, got M̄_{i}", p - 1));
        }
        let mut v = Self::zero(p);
        v.multiplicities[i - 1] = 1;
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.multiplicities[i - 1]
    }

    /// `Σ i · m_i`, the dimension of a lift without projective summands.
    pub fn lift_dim(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, m)| (i + 1) * m).sum()
    }

    pub fn add(&self, other: &VerObject) -> VerObject {
        let multiplicities = self.multiplicities.iter().zip(&other.multiplicities).map(|(a, b)| a + b).collect();
        VerObject { p: self.p, multiplicities }
    }

    pub fn scale(&self, k: usize) -> VerObject {
        VerObject { p: self.p, multiplicities: self.multiplicities.iter().map(|m| m * k).collect() }
    }
}

fn cp_generator(x: &GModule) -> Result<usize> {
    let p = x.p() as u128;
    if x.group().order() != p {
        return input(format!("expected a module over C_{p}, got a group of order {}", x.group().order()));
    }
    match x.group().generators().iter().position(|g| !g.is_identity()) {
        Some(k) => Ok(k),
        None => internal("group of prime order without a nontrivial generator"),
    }
}

/// The Jordan block `M_i` over the group of `x`, acting through its first nontrivial generator.
fn block_over(x: &GModule, i: usize) -> Result<GModule> {
    let k = cp_generator(x)?;
    let g = &x.group().generators()[k];
    let f = x.field();
    let gens = x
        .group()
        .generators()
        .iter()
        .map(|h| {
            // h = g^e for some e; M_i(h) = M_i(g)^e
            let mut e = 0;
            let mut cur = Perm::identity(g.degree());
            while &cur != h {
                cur = g.compose(&cur);
                e += 1;
            }
            unipotent_block(f, i).pow(e)
        })
        .collect();
    GModule::with_dim(x.group().clone(), f, i, gens, None)
}

/// Negligible morphisms `X -> Y`: the radical of the pairing `(f, g) -> tr(g ∘ f)`.
///
/// Returned as a subspace of `dim Y · dim X`-vectors (row-major matrices).
pub fn negligible_subspace(x: &GModule, y: &GModule) -> Result<Subspace> {
    cp_generator(x)?;
    let f = x.field();
    let fwd = hom_basis(x, y)?;
    let back = hom_basis(y, x)?;
    let mut pairing = FieldMatrix::zeros(f, fwd.len(), back.len());
    for (a, fa) in fwd.iter().enumerate() {
        for (b, gb) in back.iter().enumerate() {
            pairing.set(a, b, gb.try_mul(fa)?.trace());
        }
    }
    // c with Σ_a c_a P[a][b] = 0 for every b
    let coeffs = pairing.transpose().kernel();
    let n = y.dim() * x.dim();
    let vecs: Vec<Vec<u32>> = coeffs
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut v = vec![0u32; n];
            for (a, fa) in fwd.iter().enumerate() {
                for (k, &e) in fa.data().iter().enumerate() {
                    v[k] = f.add(v[k], f.mul(c[a], e));
                }
            }
            v
        })
        .collect();
    Ok(Subspace::from_vectors(f, n, &vecs))
}

/// `m_i = dim Triv_{C_p}(M_i^* ⊗ X)`, required to agree with the Jordan block counts.
pub fn semisimplify(x: &GModule) -> Result<VerObject> {
    let p = x.p();
    let sizes = decompose_cp(x)?;
    let mut by_jordan = VerObject::zero(p);
    for &s in &sizes {
        if s < p as usize {
            by_jordan.multiplicities[s - 1] += 1;
        }
    }
    let mut by_triv = VerObject::zero(p);
    for i in 1..p as usize {
        let mi = block_over(x, i)?;
        by_triv.multiplicities[i - 1] = triv_dim(&tensor(&dual(&mi), x)?);
    }
    if by_triv != by_jordan {
        return internal(format!("semisimplification routes disagree: {:?} vs {:?}", by_triv.multiplicities, by_jordan.multiplicities));
    }
    Ok(by_jordan)
}

/// `M̄_i ⊗ M̄_j`.
pub fn fusion(i: usize, j: usize, p: u32) -> Result<VerObject> {
    VerObject::simple(p, i)?;
    VerObject::simple(p, j)?;
    let a = GModule::jordan_block(p, i)?;
    let b = GModule::jordan_block(p, j)?;
    semisimplify(&tensor(&a, &b)?)
}

/// The full table `fusion(i, j)` for `1 <= i, j < p`.
pub fn fusion_table(p: u32) -> Result<Vec<Vec<VerObject>>> {
    (1..p as usize).map(|i| (1..p as usize).map(|j| fusion(i, j, p)).collect()).collect()
}

/// A module over `C_p` with an explicit Jordan basis.
#[derive(Clone, Debug)]
pub struct JordanDecomposition {
    pub field: PrimeField,
    pub p: usize,
    /// Block sizes in basis order.
    pub sizes: Vec<usize>,
    /// Start column of each block.
    pub offsets: Vec<usize>,
    /// Columns: Jordan basis, block `b` occupying `offsets[b] .. offsets[b] + sizes[b]`.
    pub basis: FieldMatrix,
    pub basis_inv: FieldMatrix,
}

impl JordanDecomposition {
    /// Decomposes `F^d` under a unipotent `g` with `(g - 1)^p = 0`.
    pub fn new(g: &FieldMatrix, p: usize) -> Result<Self> {
        let f = g.field();
        let d = g.rows();
        let n = g.try_sub(&FieldMatrix::identity(f, d))?;
        // kernels of N^t
        let mut kernels = vec![Subspace::zero(f, d)];
        let mut pw = FieldMatrix::identity(f, d);
        while kernels.last().unwrap().dim() < d {
            if kernels.len() > p {
                return input("generator is not unipotent of exponent p");
            }
            pw = pw.mul_unchecked(&n);
            kernels.push(pw.kernel());
        }
        let s = kernels.len() - 1;
        let apply_n = |v: &[u32]| n.apply(v);
        // chains (top vector, length)
        let mut chains: Vec<(Vec<u32>, usize)> = Vec::new();
        for t in (1..=s).rev() {
            let mut w = EchelonBuilder::new(f, d);
            for v in kernels[t - 1].basis_vectors() {
                w.insert(&v);
            }
            for (top, len) in &chains {
                let mut v = top.clone();
                for _ in 0..(len - t) {
                    v = apply_n(&v);
                }
                w.insert(&v);
            }
            for v in kernels[t].basis_vectors() {
                if w.insert(&v) {
                    chains.push((v, t));
                }
            }
        }
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(d);
        let mut sizes = Vec::new();
        let mut offsets = Vec::new();
        for (top, len) in &chains {
            offsets.push(cols.len());
            sizes.push(*len);
            // e_1 = N^{len-1} v, .., e_len = v
            let mut chain = vec![top.clone()];
            for _ in 1..*len {
                let next = apply_n(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            cols.extend(chain);
        }
        if cols.len() != d {
            return internal("Jordan chains do not span the module");
        }
        let basis = FieldMatrix::from_row_vectors(f, d, &cols).transpose();
        let Some(basis_inv) = basis.inverse() else {
            return internal("Jordan chains are linearly dependent");
        };
        Ok(JordanDecomposition { field: f, p, sizes, offsets, basis, basis_inv })
    }

    /// Blocks of size `k`.
    pub fn blocks_of(&self, k: usize) -> Vec<usize> {
        (0..self.sizes.len()).filter(|&b| self.sizes[b] == k).collect()
    }

    pub fn to_ver(&self) -> VerObject {
        let mut v = VerObject::zero(self.p as u32);
        for &s in &self.sizes {
            if s < self.p {
                v.multiplicities[s - 1] += 1;
            }
        }
        v
    }

    /// Scalar blocks of an endomorphism on the multiplicity spaces, indexed by `k - 1`.
    pub fn scalar_blocks(&self, apply: impl Fn(&[u32]) -> Vec<u32>) -> Vec<FieldMatrix> {
        let f = self.field;
        (1..self.p)
            .map(|k| {
                let blocks = self.blocks_of(k);
                let inv_k = f.inv(k as u32);
                let mut m = FieldMatrix::zeros(f, blocks.len(), blocks.len());
                for (cb, &b) in blocks.iter().enumerate() {
                    let images: Vec<Vec<u32>> = (0..k).map(|r| apply(&self.basis.column(self.offsets[b] + r))).collect();
                    for (ra, &a) in blocks.iter().enumerate() {
                        let mut tr = 0u32;
                        for (r, img) in images.iter().enumerate() {
                            let row = self.basis_inv.row(self.offsets[a] + r);
                            let s: u64 = row.iter().zip(img).map(|(&x, &y)| x as u64 * y as u64).sum();
                            tr = f.add(tr, (s % f.p() as u64) as u32);
                        }
                        m.set(ra, cb, f.mul(tr, inv_k));
                    }
                }
                m
            })
            .collect()
    }
}

fn power_of_block(field: PrimeField, i: usize, n: usize) -> FieldMatrix {
    let b = unipotent_block(field, i);
    let mut acc = FieldMatrix::identity(field, 1);
    for _ in 0..n {
        acc = acc.kron(&b);
    }
    acc
}

/// Permutes tensor factors of a vector in `(F^d)^{⊗n}`.
fn place_apply(d: usize, n: usize, sigma: &Perm, v: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; v.len()];
    let mut digits = vec![0usize; n];
    for (w, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let mut r = w;
        for i in (0..n).rev() {
            digits[i] = r % d;
            r /= d;
        }
        // (σ·w)_{σ(i)} = w_i
        let mut moved = vec![0usize; n];
        for i in 0..n {
            moved[sigma.apply(i)] = digits[i];
        }
        let t = moved.iter().fold(0, |acc, &c| acc * d + c);
        out[t] = x;
    }
    out
}

/// Largest `i^n` materialized by the `ver_p` power computations.
pub const VER_MAX_DIM: usize = 4096;

/// Scalar matrices of the place action of `S_n` on `⊗^n M̄_i`, per simple type.
fn place_blocks(i: usize, n: usize, p: u32) -> Result<(JordanDecomposition, Vec<Vec<FieldMatrix>>)> {
    let field = PrimeField::new(p)?;
    VerObject::simple(p, i)?;
    let dim = (i as u128).pow(n as u32);
    if dim > VER_MAX_DIM as u128 {
        return crate::error::resource(format!("⊗^{n} M_{i} has dimension {dim}, above {VER_MAX_DIM}"));
    }
    let g = power_of_block(field, i, n);
    let jd = JordanDecomposition::new(&g, p as usize)?;
    let sigmas = adjacent_transpositions(n);
    let blocks = sigmas.iter().map(|s| jd.scalar_blocks(|v| place_apply(i, n, s, v))).collect();
    Ok((jd, blocks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Sym,
    Gamma,
}

fn ver_power(i: usize, n: usize, p: u32, side: Side) -> Result<VerObject> {
    if n == 0 {
        return VerObject::simple(p, 1);
    }
    let (jd, blocks) = place_blocks(i, n, p)?;
    let field = jd.field;
    let mut out = VerObject::zero(p);
    for k in 1..p as usize {
        let m = jd.blocks_of(k).len();
        if m == 0 {
            continue;
        }
        let id = FieldMatrix::identity(field, m);
        let diffs: Vec<FieldMatrix> = blocks.iter().map(|b| b[k - 1].try_sub(&id)).collect::<Result<_>>()?;
        let rank = if diffs.is_empty() {
            0
        } else {
            let mut acc = diffs[0].clone();
            for d in &diffs[1..] {
                acc = match side {
                    Side::Sym => acc.hstack(d)?,
                    Side::Gamma => acc.vstack(d)?,
                };
            }
            acc.rank()
        };
        out.multiplicities[k - 1] = m - rank;
    }
    Ok(out)
}

/// `Sym^n M̄_i` in `ver_p`: the cokernel of `⊕ (σ̄ - 1)` over adjacent transpositions.
pub fn ver_sym_power(i: usize, n: usize, p: u32) -> Result<VerObject> {
    ver_power(i, n, p, Side::Sym)
}

/// `Γ^n M̄_i` in `ver_p`: the joint kernel of the `σ̄ - 1`.
pub fn ver_gamma_power(i: usize, n: usize, p: u32) -> Result<VerObject> {
    ver_power(i, n, p, Side::Gamma)
}

/// `Fr₊ M̄_i = Triv_{S_p}(⊗^p M̄_i)`, from the `S_p`-action on each multiplicity space.
pub fn fr_plus_ver_simple(i: usize, p: u32) -> Result<VerObject> {
    let n = p as usize;
    let (jd, blocks) = place_blocks(i, n, p)?;
    let sp = PermGroup::symmetric(n);
    let mut out = VerObject::zero(p);
    for k in 1..n {
        let m = jd.blocks_of(k).len();
        if m == 0 {
            continue;
        }
        let gens = blocks.iter().map(|b| b[k - 1].clone()).collect();
        let v = GModule::with_dim(sp.clone(), jd.field, m, gens, None)?;
        out.multiplicities[k - 1] = triv_dim(&v);
    }
    Ok(out)
}

fn fr_plus_ver_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<VerObject>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<VerObject>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Fr₊ M̄_i` for every `1 <= i < p`, computed once per prime.
pub fn fr_plus_ver_table(p: u32) -> Result<Arc<Vec<VerObject>>> {
    if let Some(t) = fr_plus_ver_cache().lock().unwrap().get(&p) {
        return Ok(t.clone());
    }
    let table = Arc::new((1..p as usize).map(|i| fr_plus_ver_simple(i, p)).collect::<Result<Vec<_>>>()?);
    fr_plus_ver_cache().lock().unwrap().insert(p, table.clone());
    Ok(table)
}

/// `Fr₊` of the semisimplification of `X`, by additivity over its simple summands.
pub fn fr_plus_ver(x: &GModule) -> Result<VerObject> {
    let p = x.p();
    let ss = semisimplify(x)?;
    let table = fr_plus_ver_table(p)?;
    let mut out = VerObject::zero(p);
    for (i, &m) in ss.multiplicities.iter().enumerate() {
        out = out.add(&table[i].scale(m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(p: u32, sizes: &[usize]) -> GModule {
        GModule::cp_module(p, sizes).unwrap()
    }

    fn ver(p: u32, m: &[usize]) -> VerObject {
        VerObject { p, multiplicities: m.to_vec() }
    }

    #[test]
    fn negligible_examples() {
        let mp = cp(3, &[3]);
        assert_eq!(negligible_subspace(&mp, &mp).unwrap().dim(), 3);
        let one = cp(3, &[1]);
        assert_eq!(negligible_subspace(&one, &one).unwrap().dim(), 0);
        let m2 = cp(3, &[2]);
        assert_eq!(negligible_subspace(&m2, &m2).unwrap().dim(), 1);
    }

    #[test]
    fn semisimplify_examples() {
        assert!(semisimplify(&cp(3, &[3])).unwrap().is_zero());
        assert_eq!(semisimplify(&cp(3, &[2])).unwrap(), ver(3, &[0, 1]));
        let m2 = cp(3, &[2]);
        assert_eq!(semisimplify(&tensor(&m2, &m2).unwrap()).unwrap(), ver(3, &[1, 0]));
    }

    #[test]
    fn fusion_examples() {
        for p in [3u32, 5, 7] {
            for j in 1..p as usize {
                assert_eq!(fusion(1, j, p).unwrap(), VerObject::simple(p, j).unwrap());
            }
        }
        assert_eq!(fusion(2, 2, 3).unwrap(), ver(3, &[1, 0]));
        assert_eq!(fusion(2, 2, 5).unwrap(), ver(5, &[1, 0, 1, 0]));
    }

    #[test]
    fn fusion_ring_axioms() {
        for p in [2u32, 3, 5, 7] {
            let t = fusion_table(p).unwrap();
            let q = p as usize - 1;
            let mul = |a: &VerObject, b: &VerObject| {
                let mut out = VerObject::zero(p);
                for i in 0..q {
                    for j in 0..q {
                        let c = a.multiplicities[i] * b.multiplicities[j];
                        if c > 0 {
                            out = out.add(&t[i][j].scale(c));
                        }
                    }
                }
                out
            };
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(t[a][b], t[b][a]);
                    let res: usize = t[a][b].multiplicities.iter().enumerate().map(|(i, m)| (i + 1) * m).sum();
                    assert_eq!(res % p as usize, ((a + 1) * (b + 1)) % p as usize);
                    for c in 0..q {
                        let sc = VerObject::simple(p, c + 1).unwrap();
                        assert_eq!(mul(&t[a][b], &sc), mul(&VerObject::simple(p, a + 1).unwrap(), &t[b][c]));
                    }
                }
            }
        }
    }

    #[test]
    fn jordan_decomposition_reassembles() {
        let f = PrimeField::new(3).unwrap();
        let g = power_of_block(f, 2, 3);
        let jd = JordanDecomposition::new(&g, 3).unwrap();
        let mut sizes = jd.sizes.clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, crate::repmod::jordan_sizes(&g.try_sub(&FieldMatrix::identity(f, 8)).unwrap()));
        // P^-1 g P is the block diagonal of unipotent blocks
        let conj = jd.basis_inv.try_mul(&g).unwrap().try_mul(&jd.basis).unwrap();
        let mut expected = FieldMatrix::zeros(f, 0, 0);
        for &s in &jd.sizes {
            expected = expected.direct_sum(&unipotent_block(f, s));
        }
        assert_eq!(conj, expected);
    }

    #[test]
    fn gamma_ver_vanishing() {
        for p in [3u32, 5, 7] {
            for j in 2..p as usize {
                let n = p as usize - j + 1;
                assert!(ver_sym_power(j, n, p).unwrap().is_zero(), "Sym p={p} j={j}");
                assert!(ver_gamma_power(j, n, p).unwrap().is_zero(), "Γ p={p} j={j}");
            }
        }
    }

    #[test]
    fn unit_powers() {
        for p in [3u32, 5] {
            for n in 0..6 {
                assert_eq!(ver_sym_power(1, n, p).unwrap(), VerObject::simple(p, 1).unwrap());
            }
        }
    }

    #[test]
    fn small_powers_commute_with_semisimplification() {
        // for n < p, Sym^n is a summand of ⊗^n and semisimplification commutes with it
        for p in [5u32, 7] {
            for i in 1..p as usize {
                for n in 1..(p as usize).min(5) {
                    if (i as u128).pow(n as u32) > 1000 {
                        continue;
                    }
                    let m = GModule::jordan_block(p, i).unwrap();
                    let s = crate::sympow::sym_power(&m, n, 100_000).unwrap();
                    assert_eq!(ver_sym_power(i, n, p).unwrap(), semisimplify(&s).unwrap(), "p={p} i={i} n={n}");
                }
            }
        }
        assert_eq!(ver_sym_power(2, 2, 5).unwrap(), ver(5, &[0, 0, 1, 0]));
    }

    #[test]
    fn ver3_matches_super_lines() {
        // ver_3 has M̄_2 ⊗ M̄_2 = M̄_1, matching the odd line
        let f = PrimeField::new(3).unwrap();
        let odd = crate::superrep::odd_line(f).unwrap();
        for n in 0..=4 {
            let s = crate::sympow::sym_power(&odd, n, 1000).unwrap();
            let g = crate::sympow::gamma_power(&odd, n, 1000).unwrap();
            let (se, so) = s.super_dim();
            let (ge, go) = g.super_dim();
            assert_eq!(ver_sym_power(2, n, 3).unwrap().multiplicities, vec![se, so]);
            assert_eq!(ver_gamma_power(2, n, 3).unwrap().multiplicities, vec![ge, go]);
        }
    }

    #[test]
    fn fr_plus_ver_examples() {
        assert!(fr_plus_ver(&cp(3, &[2])).unwrap().is_zero());
        assert_eq!(fr_plus_ver(&cp(3, &[1])).unwrap(), ver(3, &[1, 0]));
        assert_eq!(fr_plus_ver(&cp(3, &[1, 2])).unwrap(), ver(3, &[1, 0]));
        for i in 1..5 {
            let expected = if i == 1 { VerObject::simple(5, 1).unwrap() } else { VerObject::zero(5) };
            assert_eq!(fr_plus_ver_simple(i, 5).unwrap(), expected, "i={i}");
        }
    }
}
