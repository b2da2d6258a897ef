//! Invariants and coinvariants of a place-permutation action on `M ⊗ X^{⊗n}`.
//!
//! The place group permutes the word basis of `X^{⊗n}` (with Koszul signs for
//! graded `X`) and acts on the coefficient representation `M` by the supplied
//! matrices. Each orbit `O` of words with root `w0` and stabilizer `S`
//! contributes `Ind_S(M ⊗ χ)`, so its invariants, coinvariants and trivial
//! part are computed inside `M` from the Schreier generators of `S`.
//!
//! A breadth-first transversal stores for every word `w` a matrix `T_w` with
//! `T_{g w} = s(g, w) ρ(g) T_w` along tree edges. Then
//! * an invariant `v ∈ H^0(S, M)` lifts to `Σ_{w ∈ O} T_w v ⊗ w`,
//! * a term `m ⊗ w` has coinvariant class `q_K(T_w^-1 m)` in `M / K`,
//! * the composite `H^0 -> H_0` on the orbit is `|O|` times `v -> q_K(v)`.
//!
//! The dense ambient space is never formed; residual `G`-actions are read off
//! at orbit roots.

use crate::error::{input, internal, resource, Result};
use crate::ffla::{kernel, EchelonBuilder, FieldMatrix, PrimeField, Subspace};
use crate::permgrp::Perm;
use crate::repmod::GModule;

use super::TensorPower;

/// One orbit of words and its local invariant data.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub root: usize,
    /// Words of the orbit in discovery order; `words[0] == root`.
    pub words: Vec<u32>,
    /// `H^0(S, M ⊗ χ)` inside `F^m`.
    pub h0: Subspace,
    /// `Σ im(A_h - 1)` inside `F^m`; `H_0(S, M ⊗ χ) = F^m / kill`.
    pub kill: Subspace,
    /// Echelon basis of the image of `h0` in `F^m / kill` (quotient coordinates),
    /// zero when `p` divides the orbit length.
    triv_image: Subspace,
    /// Lifts in `h0` of the `triv_image` basis.
    triv_lifts: Vec<Vec<u32>>,
    /// Total parity of the words in the orbit.
    pub parity: u8,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn triv_dim(&self) -> usize {
        self.triv_image.dim()
    }

    pub fn coinv_dim(&self) -> usize {
        self.kill.ambient_dim() - self.kill.dim()
    }

    fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.kill.reduce(v);
        self.kill.complement_indices().iter().map(|&c| r[c]).collect()
    }
}

/// Which subquotient of the place action a basis refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Invariants,
    Coinvariants,
    Triv,
}

/// Orbit decomposition of `M ⊗ X^{⊗n}` under a place group.
#[derive(Clone, Debug)]
pub struct PlaceDecomposition {
    pub tensor: TensorPower,
    m: usize,
    field: PrimeField,
    orbit_of: Vec<u32>,
    pub orbits: Vec<Orbit>,
    trans: Vec<u32>,
    trans_inv: Vec<u32>,
}

fn mul_into(p: u32, m: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
    for i in 0..m {
        for j in 0..m {
            let mut s = 0u64;
            for k in 0..m {
                s += a[i * m + k] as u64 * b[k * m + j] as u64;
            }
            out[i * m + j] = (s % p as u64) as u32;
        }
    }
}

fn mat_vec(p: u32, m: usize, a: &[u32], v: &[u32]) -> Vec<u32> {
    (0..m)
        .map(|i| {
            let s: u64 = (0..m).map(|k| a[i * m + k] as u64 * v[k] as u64).sum();
            (s % p as u64) as u32
        })
        .collect()
}

impl PlaceDecomposition {
    /// Decomposes `M ⊗ X^{⊗n}` for place generators `place_gens` acting on `M` by `coeff`.
    ///
    /// `cap` bounds `dim M · dim(X)^n`.
    pub fn new(x: &GModule, n: usize, place_gens: &[Perm], coeff: &[FieldMatrix], cap: usize) -> Result<Self> {
        if place_gens.len() != coeff.len() {
            return input("one coefficient matrix is needed per place generator");
        }
        if let Some(g) = place_gens.iter().find(|g| g.degree() != n) {
            return input(format!("place generator {g} does not act on {n} positions"));
        }
        let field = x.field();
        let m = coeff.first().map_or(1, |c| c.rows());
        if coeff.iter().any(|c| c.rows() != m || c.cols() != m || c.field() != field) {
            return input("coefficient matrices disagree in size or field");
        }
        let tensor = TensorPower::new(x.clone(), n, cap)?;
        let size = tensor.size();
        if size.checked_mul(m).is_none_or(|t| t > cap) {
            return resource(format!(
                "coefficient space of dimension {} over {size} words exceeds the cap {cap}",
                m
            ));
        }
        let p = field.p();
        let mm = m * m;
        let rho: Vec<Vec<u32>> = coeff.iter().map(|c| c.data().to_vec()).collect();
        let rho_inv: Vec<Vec<u32>> = coeff
            .iter()
            .map(|c| c.inverse().map(|i| i.data().to_vec()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| crate::error::Error::Input("coefficient matrix is singular".into()))?;
        let ident: Vec<u32> = FieldMatrix::identity(field, m).data().to_vec();

        let mut orbit_of = vec![u32::MAX; size];
        let mut trans = vec![0u32; size * mm];
        let mut trans_inv = vec![0u32; size * mm];
        let mut orbits = Vec::new();
        let mut digits = vec![0usize; n];
        let mut b = vec![0u32; mm];
        let mut a = vec![0u32; mm];
        let mut tmp = vec![0u32; mm];

        for start in 0..size {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_of[start] = id;
            trans[start * mm..(start + 1) * mm].copy_from_slice(&ident);
            trans_inv[start * mm..(start + 1) * mm].copy_from_slice(&ident);
            let mut words = vec![start as u32];
            let mut rows = EchelonBuilder::new(field, m);
            let mut cols = EchelonBuilder::new(field, m);
            let mut head = 0;
            while head < words.len() {
                let w = words[head] as usize;
                head += 1;
                tensor.digits_into(w, &mut digits);
                for (k, g) in place_gens.iter().enumerate() {
                    let (w2, negative) = tensor.place_digits(g, &digits);
                    // b = s ρ_k T_w
                    mul_into(p, m, &rho[k], &trans[w * mm..(w + 1) * mm], &mut b);
                    if negative {
                        b.iter_mut().for_each(|x| *x = field.neg(*x));
                    }
                    if orbit_of[w2] == u32::MAX {
                        orbit_of[w2] = id;
                        trans[w2 * mm..(w2 + 1) * mm].copy_from_slice(&b);
                        mul_into(p, m, &trans_inv[w * mm..(w + 1) * mm], &rho_inv[k], &mut tmp);
                        if negative {
                            tmp.iter_mut().for_each(|x| *x = field.neg(*x));
                        }
                        trans_inv[w2 * mm..(w2 + 1) * mm].copy_from_slice(&tmp);
                        words.push(w2 as u32);
                    } else if !(rows.is_full() && cols.is_full()) {
                        mul_into(p, m, &trans_inv[w2 * mm..(w2 + 1) * mm], &b, &mut a);
                        for i in 0..m {
                            a[i * m + i] = field.sub(a[i * m + i], 1);
                        }
                        if a.iter().all(|&x| x == 0) {
                            continue;
                        }
                        for i in 0..m {
                            rows.insert(&a[i * m..(i + 1) * m]);
                        }
                        for j in 0..m {
                            let col: Vec<u32> = (0..m).map(|i| a[i * m + j]).collect();
                            cols.insert(&col);
                        }
                    }
                }
            }
            let row_space = rows.into_subspace();
            let h0 = if row_space.is_zero() { Subspace::full(field, m) } else { kernel(row_space.basis()) };
            let kill = cols.into_subspace();
            let parity = tensor.word_parity(start);
            let mut orbit = Orbit {
                root: start,
                words,
                h0,
                kill,
                triv_image: Subspace::zero(field, 0),
                triv_lifts: vec![],
                parity,
            };
            let qdim = orbit.coinv_dim();
            if orbit.len() % p as usize != 0 && !orbit.h0.is_zero() {
                // rref of [q(h) | h] over the q-columns pairs each image basis vector with a lift
                let hb = orbit.h0.basis_vectors();
                let aug: Vec<Vec<u32>> = hb
                    .iter()
                    .map(|h| {
                        let mut row = orbit.quotient_coords(h);
                        row.extend_from_slice(h);
                        row
                    })
                    .collect();
                let red = crate::ffla::rref(&FieldMatrix::from_row_vectors(field, qdim + m, &aug));
                let mut imgs = Vec::new();
                let mut lifts = Vec::new();
                for (r, &pc) in red.pivot_cols.iter().enumerate() {
                    if pc >= qdim {
                        break;
                    }
                    let row = red.matrix.row(r);
                    imgs.push(row[..qdim].to_vec());
                    lifts.push(row[qdim..].to_vec());
                }
                orbit.triv_image = Subspace::from_vectors(field, qdim, &imgs);
                if orbit.triv_image.basis_vectors() != imgs {
                    return internal("triv image basis is not in echelon form");
                }
                orbit.triv_lifts = lifts;
            } else {
                orbit.triv_image = Subspace::zero(field, qdim);
            }
            orbits.push(orbit);
        }
        Ok(PlaceDecomposition { tensor, m, field, orbit_of, orbits, trans, trans_inv })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeff_dim(&self) -> usize {
        self.m
    }

    pub fn orbit_of(&self, word: usize) -> usize {
        self.orbit_of[word] as usize
    }

    fn t(&self, w: usize) -> &[u32] {
        let mm = self.m * self.m;
        &self.trans[w * mm..(w + 1) * mm]
    }

    fn t_inv(&self, w: usize) -> &[u32] {
        let mm = self.m * self.m;
        &self.trans_inv[w * mm..(w + 1) * mm]
    }

    pub fn dim(&self, part: Part) -> usize {
        self.orbits
            .iter()
            .map(|o| match part {
                Part::Invariants => o.h0.dim(),
                Part::Coinvariants => o.coinv_dim(),
                Part::Triv => o.triv_dim(),
            })
            .sum()
    }

    /// `(even, odd)` dimensions of a part.
    pub fn super_dim(&self, part: Part) -> (usize, usize) {
        let mut out = (0, 0);
        for o in &self.orbits {
            let d = match part {
                Part::Invariants => o.h0.dim(),
                Part::Coinvariants => o.coinv_dim(),
                Part::Triv => o.triv_dim(),
            };
            if o.parity == 0 {
                out.0 += d;
            } else {
                out.1 += d;
            }
        }
        out
    }

    fn local_dim(o: &Orbit, part: Part) -> usize {
        match part {
            Part::Invariants => o.h0.dim(),
            Part::Coinvariants => o.coinv_dim(),
            Part::Triv => o.triv_dim(),
        }
    }

    /// Offsets of each orbit block in the global basis of `part`.
    pub fn offsets(&self, part: Part) -> Vec<usize> {
        let mut acc = 0;
        self.orbits
            .iter()
            .map(|o| {
                let here = acc;
                acc += Self::local_dim(o, part);
                here
            })
            .collect()
    }

    fn parity_vector(&self, part: Part) -> Option<Vec<u8>> {
        if !self.tensor.base().is_super() {
            return None;
        }
        Some(self.orbits.iter().flat_map(|o| std::iter::repeat_n(o.parity, Self::local_dim(o, part))).collect())
    }

    /// Invariant basis vector `k` of orbit `o`, in `F^m`.
    fn basis_vector(&self, o: usize, part: Part, k: usize) -> Vec<u32> {
        let orbit = &self.orbits[o];
        match part {
            Part::Invariants => orbit.h0.basis().row(k).to_vec(),
            Part::Triv => orbit.triv_lifts[k].clone(),
            Part::Coinvariants => {
                let mut v = vec![0u32; self.m];
                v[orbit.kill.complement_indices()[k]] = 1;
                v
            }
        }
    }

    /// The lift `Σ_{w ∈ O} T_w v ⊗ w` as `(word, M-vector)` pairs.
    pub fn lift(&self, o: usize, v: &[u32]) -> Vec<(usize, Vec<u32>)> {
        let p = self.field.p();
        self.orbits[o]
            .words
            .iter()
            .map(|&w| (w as usize, mat_vec(p, self.m, self.t(w as usize), v)))
            .collect()
    }

    /// Lift of global basis vector `idx` of the invariants or of `Triv`.
    pub fn lift_basis(&self, part: Part, idx: usize) -> Vec<(usize, Vec<u32>)> {
        let (o, k) = self.locate(part, idx);
        match part {
            Part::Coinvariants => vec![(self.orbits[o].root, self.basis_vector(o, part, k))],
            _ => self.lift(o, &self.basis_vector(o, part, k)),
        }
    }

    fn locate(&self, part: Part, mut idx: usize) -> (usize, usize) {
        for (o, orbit) in self.orbits.iter().enumerate() {
            let d = Self::local_dim(orbit, part);
            if idx < d {
                return (o, idx);
            }
            idx -= d;
        }
        panic!("basis index out of range");
    }

    /// Coinvariant coordinates of a sparse ambient vector given as `(word, M-vector)` terms.
    pub fn project(&self, terms: &[(usize, Vec<u32>)]) -> Vec<u32> {
        let f = self.field;
        let offsets = self.offsets(Part::Coinvariants);
        let mut out = vec![0u32; self.dim(Part::Coinvariants)];
        for (w, mv) in terms {
            let o = self.orbit_of(*w);
            let orbit = &self.orbits[o];
            if orbit.coinv_dim() == 0 {
                continue;
            }
            let local = orbit.quotient_coords(&mat_vec(f.p(), self.m, self.t_inv(*w), mv));
            for (k, x) in local.into_iter().enumerate() {
                out[offsets[o] + k] = f.add(out[offsets[o] + k], x);
            }
        }
        out
    }

    /// The composite `H^0 -> H_0` applied to the lift of `v ∈ h0` of orbit `o`.
    pub fn norm_image(&self, o: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let orbit = &self.orbits[o];
        let scale = (orbit.len() as u64 % f.p() as u64) as u32;
        let offsets = self.offsets(Part::Coinvariants);
        let mut out = vec![0u32; self.dim(Part::Coinvariants)];
        for (k, x) in orbit.quotient_coords(v).into_iter().enumerate() {
            out[offsets[o] + k] = f.mul(x, scale);
        }
        out
    }

    /// Images of the `Triv` basis in coinvariant coordinates.
    pub fn triv_in_coinvariants(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (o, orbit) in self.orbits.iter().enumerate() {
            for lift in &orbit.triv_lifts {
                out.push(self.norm_image(o, lift));
            }
        }
        out
    }

    /// Value at word `r` of `φ(g)^{⊗n}` applied to `Σ_w c_w ⊗ w`.
    fn diag_at(&self, phi: &FieldMatrix, r: &[usize], terms: &[(usize, Vec<u32>)], scratch: &mut [usize]) -> Vec<u32> {
        let f = self.field;
        let mut acc = vec![0u64; self.m];
        for (w, mv) in terms {
            self.tensor.digits_into(*w, scratch);
            let mut c = 1u32;
            for (ri, wi) in r.iter().zip(scratch.iter()) {
                c = f.mul(c, phi.get(*ri, *wi));
                if c == 0 {
                    break;
                }
            }
            if c != 0 {
                for (a, &x) in acc.iter_mut().zip(mv) {
                    *a += c as u64 * x as u64;
                }
            }
        }
        acc.into_iter().map(|x| (x % f.p() as u64) as u32).collect()
    }

    /// Residual `G`-action on invariants or `Triv`, one matrix per generator of `G`.
    fn residual_on_invariant_side(&self, part: Part) -> Result<Vec<FieldMatrix>> {
        let x = self.tensor.base();
        let dim = self.dim(part);
        let n = self.tensor.n();
        let offsets = self.offsets(part);
        let targets: Vec<usize> = (0..self.orbits.len()).filter(|&o| Self::local_dim(&self.orbits[o], part) > 0).collect();
        let root_digits: Vec<Vec<usize>> = targets.iter().map(|&o| self.tensor.digits(self.orbits[o].root)).collect();
        let mut scratch = vec![0usize; n];
        let mut mats = Vec::new();
        for phi in x.generator_matrices() {
            let mut mat = FieldMatrix::zeros(self.field, dim, dim);
            for col in 0..dim {
                let terms = self.lift_basis(part, col);
                for (t, &o2) in targets.iter().enumerate() {
                    let u = self.diag_at(phi, &root_digits[t], &terms, &mut scratch);
                    let orbit = &self.orbits[o2];
                    let coords = match part {
                        Part::Invariants => orbit.h0.coordinates(&u),
                        Part::Triv => orbit.triv_image.coordinates(&orbit.quotient_coords(&u)),
                        Part::Coinvariants => unreachable!(),
                    };
                    let Some(coords) = coords else {
                        return internal("residual action leaves the invariant subspace");
                    };
                    for (k, c) in coords.into_iter().enumerate() {
                        mat.set(offsets[o2] + k, col, c);
                    }
                }
            }
            mats.push(mat);
        }
        Ok(mats)
    }

    /// Residual `G`-action on coinvariants.
    fn residual_on_coinvariants(&self) -> Vec<FieldMatrix> {
        let x = self.tensor.base();
        let dim = self.dim(Part::Coinvariants);
        let n = self.tensor.n();
        let d = x.dim();
        let mut mats = Vec::new();
        for phi in x.generator_matrices() {
            let supports: Vec<Vec<(usize, u32)>> =
                (0..d).map(|c| (0..d).filter_map(|r| (phi.get(r, c) != 0).then(|| (r, phi.get(r, c)))).collect()).collect();
            let mut mat = FieldMatrix::zeros(self.field, dim, dim);
            for col in 0..dim {
                let terms = self.lift_basis(Part::Coinvariants, col);
                let (root, y) = &terms[0];
                let digits = self.tensor.digits(*root);
                let mut image_terms = Vec::new();
                // expand φ x_{r_0} ⊗ .. ⊗ φ x_{r_{n-1}}
                let mut stack: Vec<(usize, usize, u32)> = vec![(0, 0, 1)];
                while let Some((pos, idx, c)) = stack.pop() {
                    if pos == n {
                        image_terms.push((idx, y.iter().map(|&v| self.field.mul(v, c)).collect::<Vec<u32>>()));
                        continue;
                    }
                    for &(r, e) in &supports[digits[pos]] {
                        stack.push((pos + 1, idx * d + r, self.field.mul(c, e)));
                    }
                }
                let coords = self.project(&image_terms);
                for (r, v) in coords.into_iter().enumerate() {
                    mat.set(r, col, v);
                }
            }
            mats.push(mat);
        }
        mats
    }

    /// The chosen part as a module for the group of `X`.
    pub fn module(&self, part: Part) -> Result<GModule> {
        let x = self.tensor.base();
        let gens = match part {
            Part::Coinvariants => self.residual_on_coinvariants(),
            _ => self.residual_on_invariant_side(part)?,
        };
        Ok(GModule::from_parts(x.group().clone(), self.field, self.dim(part), gens, self.parity_vector(part)))
    }

    /// Residual action estimate, in elementary operations, for budget checks.
    pub fn residual_cost(&self, part: Part) -> u128 {
        let g = self.tensor.base().num_gens_for_cost() as u128;
        let n = self.tensor.n() as u128;
        match part {
            Part::Coinvariants => {
                g * self.dim(part) as u128 * (self.tensor.base().dim() as u128).pow(self.tensor.n() as u32)
            }
            _ => {
                let roots = self.orbits.iter().filter(|o| Self::local_dim(o, part) > 0).count() as u128;
                let words: u128 = self.orbits.iter().map(|o| (Self::local_dim(o, part) * o.len()) as u128).sum();
                g * roots * words * n
            }
        }
    }
}

impl GModule {
    pub(crate) fn num_gens_for_cost(&self) -> usize {
        self.generator_matrices().len().max(1)
    }
}
