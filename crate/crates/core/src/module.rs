//! Finite-dimensional right modules given by action matrices.
//!
//! Vectors are rows and act on the right: `v · a` is `v * ρ(a)`. With this
//! convention `ρ` is an algebra homomorphism, `ρ(a_i) ρ(a_j) = ρ(a_i a_j)`,
//! and module maps are matrices `X` with `ρ_M(a) X = X ρ_N(a)`; composing
//! "first `X`, then `Y`" is the product `X Y`.
//!
//! The algorithms are exhaustive and deterministic. Anything that enumerates
//! a vector space takes a [`Guard`] and fails cleanly when the space is
//! larger than the guard allows.

use std::sync::Arc;

use crate::algebra::{Algebra, Radical};
use crate::error::{Error, Guard, Result};
use crate::linalg::{field_power, normalized_vectors, EchelonBasis, Matrix, VectorIter};

#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    /// Builds a module, checking that `ρ` is a unital algebra homomorphism.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.p() != algebra.p() {
                return Err(Error::InvalidModule(format!("action matrix {i} is over GF({})", m.p())));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!("action matrix {i} has shape {:?}", m.shape())));
            }
        }
        let module = RightModule { algebra, dim, action };
        module.check_axioms()?;
        Ok(module)
    }

    /// Skips the axiom check; callers construct actions that are modules by
    /// construction. Debug builds still check.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        let module = RightModule { algebra, dim, action };
        debug_assert!(module.check_axioms().is_ok(), "module axioms fail");
        module
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.p();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(p, 0, 0)).collect();
        RightModule { algebra, dim: 0, action }
    }

    fn check_axioms(&self) -> Result<()> {
        let a = &self.algebra;
        let n = a.dim();
        let p = a.p();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(p, self.dim, self.dim);
                for k in 0..n {
                    rhs.add_scaled(&self.action[k], a.constant(i, j, k));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("ρ(a{i})ρ(a{j}) ≠ ρ(a{i}a{j})")));
                }
            }
        }
        if self.element_action(a.unit()) != Matrix::identity(p, self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `ρ(a_i)`.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(x)` for an algebra element given in coordinates.
    pub fn element_action(&self, x: &[u8]) -> Matrix {
        Matrix::linear_combination(self.p(), self.dim, self.dim, &self.action, x)
    }

    pub fn same_algebra(&self, other: &RightModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_structure(&other.algebra)
    }

    fn require_same_algebra(&self, other: &RightModule) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule> {
        self.require_same_algebra(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(RightModule::from_parts(self.algebra.clone(), self.dim + other.dim, action))
    }

    /// The same module written in the basis given by the rows of `change`:
    /// `ρ'(a) = P ρ(a) P⁻¹`.
    pub fn change_basis(&self, change: &Matrix) -> Result<RightModule> {
        let inv = change.inverse().ok_or_else(|| Error::InvalidInput("base change matrix is not invertible".into()))?;
        if change.rows() != self.dim {
            return Err(Error::InvalidInput("base change has the wrong size".into()));
        }
        let action = self.action.iter().map(|a| change.mul(a).mul(&inv)).collect();
        Ok(RightModule::from_parts(self.algebra.clone(), self.dim, action))
    }

    /// Ordering key: dimension, then the action matrices' entries.
    pub fn canonical_key(&self) -> (usize, Vec<u8>) {
        let mut bytes = Vec::with_capacity(self.action.len() * self.dim * self.dim);
        for m in &self.action {
            bytes.extend_from_slice(m.as_slice());
        }
        (self.dim, bytes)
    }

    /// Whether the row space of `basis` is closed under the action.
    pub fn is_action_closed(&self, basis: &Matrix) -> bool {
        let span = EchelonBasis::from_matrix(basis);
        (0..basis.rows()).all(|r| {
            let v = Matrix::row_vector(self.p(), basis.row(r));
            self.action.iter().all(|a| span.contains(v.mul(a).row(0)))
        })
    }
}

/// The right regular module `A_A`: `a_j` acts by right multiplication.
pub fn regular_module(a: &Arc<Algebra>) -> RightModule {
    let action = (0..a.dim()).map(|j| a.right_multiplication(&a.basis_vector(j))).collect();
    RightModule::from_parts(a.clone(), a.dim(), action)
}

/// Basis (in reduced echelon form) of the submodule generated by `v`.
pub fn spin(m: &RightModule, v: &[u8]) -> Result<Matrix> {
    if v.len() != m.dim {
        return Err(Error::InvalidInput(format!("vector of length {} in a module of dimension {}", v.len(), m.dim)));
    }
    let p = m.p();
    let mut span = EchelonBasis::new(p, m.dim);
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if !span.insert(&w) {
            continue;
        }
        let row = Matrix::row_vector(p, &w);
        for a in &m.action {
            let image = row.mul(a);
            if !span.contains(image.row(0)) {
                queue.push(image.row(0).to_vec());
            }
        }
    }
    Ok(span.to_matrix())
}

/// True iff `m` is nonzero and every nonzero vector generates all of `m`.
pub fn is_simple(m: &RightModule, guard: Guard) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    guard.check("is_simple", m.p(), m.dim)?;
    for v in normalized_vectors(m.p(), m.dim) {
        if spin(m, &v)?.rows() < m.dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A simple submodule: the cyclic submodule of least dimension, ties broken
/// by the lexicographically least generator.
pub fn minimal_submodule(m: &RightModule, guard: Guard) -> Result<Matrix> {
    if m.dim == 0 {
        return Err(Error::Precondition("the zero module has no simple submodule".into()));
    }
    guard.check("minimal_submodule", m.p(), m.dim)?;
    let mut best: Option<Matrix> = None;
    for v in normalized_vectors(m.p(), m.dim) {
        let s = spin(m, &v)?;
        if best.as_ref().is_none_or(|b| s.rows() < b.rows()) {
            let done = s.rows() == 1;
            best = Some(s);
            if done {
                break;
            }
        }
    }
    Ok(best.expect("nonzero module has a nonzero vector"))
}

/// Submodule, quotient and the maps between them.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub sub: RightModule,
    pub quotient: RightModule,
    /// Rows: the submodule basis in the coordinates of the ambient module.
    pub inclusion: Matrix,
    /// `dim m × dim quotient`: coordinates of `v + sub` in the quotient basis.
    pub projection: Matrix,
    /// Rows: lifts of the quotient basis to the ambient module.
    pub complement: Matrix,
}

/// Induced module structures on an action-closed subspace and on the
/// corresponding quotient. Dependent rows of `sub_basis` are discarded.
pub fn sub_quotient(m: &RightModule, sub_basis: &Matrix) -> Result<SubQuotient> {
    let p = m.p();
    if sub_basis.cols() != m.dim {
        return Err(Error::InvalidInput("subspace basis has the wrong width".into()));
    }
    let sub_basis = if sub_basis.rank() == sub_basis.rows() { sub_basis.clone() } else { sub_basis.row_space() };
    if !m.is_action_closed(&sub_basis) {
        return Err(Error::NotActionClosed);
    }
    let k = sub_basis.rows();
    let mut span = EchelonBasis::from_matrix(&sub_basis);
    let mut complement_rows = Vec::new();
    for i in 0..m.dim {
        let mut e = vec![0u8; m.dim];
        e[i] = 1;
        if span.insert(&e) {
            complement_rows.push(e);
        }
    }
    let complement = Matrix::from_row_slices(p, m.dim, &complement_rows);
    let full = sub_basis.vstack(&complement);
    let inv = full.inverse().expect("sub basis extended to a basis");
    let q = m.dim - k;
    let mut sub_action = Vec::with_capacity(m.action.len());
    let mut quot_action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        sub_action.push(sub_basis.mul(a).mul(&inv).block(0, 0, k, k));
        quot_action.push(complement.mul(a).mul(&inv).block(0, k, q, q));
    }
    Ok(SubQuotient {
        sub: RightModule::from_parts(m.algebra.clone(), k, sub_action),
        quotient: RightModule::from_parts(m.algebra.clone(), q, quot_action),
        inclusion: sub_basis,
        projection: inv.block(0, k, m.dim, q),
        complement,
    })
}

/// Restriction of `m` to an action-closed subspace, in the given basis.
pub fn restrict(m: &RightModule, basis: &Matrix) -> Result<RightModule> {
    Ok(sub_quotient(m, basis)?.sub)
}

/// Composition factors bottom-up: repeatedly split off the minimal
/// submodule and continue with the quotient.
pub fn composition_series(m: &RightModule, guard: Guard) -> Result<Vec<RightModule>> {
    let mut factors = Vec::new();
    let mut current = m.clone();
    while current.dim > 0 {
        let simple = minimal_submodule(&current, guard)?;
        let sq = sub_quotient(&current, &simple)?;
        factors.push(sq.sub);
        current = sq.quotient;
    }
    Ok(factors)
}

pub fn length(m: &RightModule, guard: Guard) -> Result<usize> {
    Ok(composition_series(m, guard)?.len())
}

/// Composition factors up to isomorphism with multiplicities, in order of
/// first appearance.
pub fn composition_factors(m: &RightModule, guard: Guard) -> Result<Vec<(RightModule, usize)>> {
    let mut classes: Vec<(RightModule, usize)> = Vec::new();
    'factors: for f in composition_series(m, guard)? {
        for (rep, count) in classes.iter_mut() {
            if are_isomorphic(rep, &f, guard)?.is_some() {
                *count += 1;
                continue 'factors;
            }
        }
        classes.push((f, 1));
    }
    Ok(classes)
}

/// True iff all composition factors are isomorphic; the zero module counts
/// as isotypic.
pub fn is_isotypic(m: &RightModule, guard: Guard) -> Result<bool> {
    Ok(composition_factors(m, guard)?.len() <= 1)
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: RightModule,
    pub target: RightModule,
    /// `dim source × dim target` intertwiners.
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[u8]) -> Matrix {
        Matrix::linear_combination(self.source.p(), self.source.dim, self.target.dim, &self.basis, coeffs)
    }
}

/// Solves `ρ_m(a_i) X = X ρ_n(a_i)` for all basis elements `a_i`.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<HomSpace> {
    m.require_same_algebra(n)?;
    let p = m.p();
    let (r, c) = (m.dim, n.dim);
    let unknowns = r * c;
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    for (am, an) in m.action.iter().zip(&n.action) {
        for row in 0..r {
            for col in 0..c {
                let mut eq = vec![0u8; unknowns];
                // (ρ_m X)[row][col] = Σ_s ρ_m[row][s] X[s][col]
                for s in 0..r {
                    let v = am.get(row, s);
                    if v != 0 {
                        let idx = s * c + col;
                        eq[idx] = ((eq[idx] as u32 + v) % p) as u8;
                    }
                }
                // − (X ρ_n)[row][col] = − Σ_s X[row][s] ρ_n[s][col]
                for s in 0..c {
                    let v = an.get(s, col);
                    if v != 0 {
                        let idx = row * c + s;
                        eq[idx] = ((eq[idx] as u32 + p - v) % p) as u8;
                    }
                }
                if eq.iter().any(|&e| e != 0) {
                    eqs.push(eq);
                }
            }
        }
    }
    let system = Matrix::from_row_slices(p, unknowns, &eqs);
    let kernel = system.null_space();
    let basis = (0..kernel.rows()).map(|i| Matrix::from_flat(p, r, c, kernel.row(i))).collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis })
}

/// `End(M)` as a span of intertwiners.
#[derive(Clone, Debug)]
pub struct EndRealization {
    pub module: RightModule,
    pub basis: Vec<Matrix>,
    pub contains_identity: bool,
}

impl EndRealization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[u8]) -> Matrix {
        let d = self.module.dim;
        Matrix::linear_combination(self.module.p(), d, d, &self.basis, coeffs)
    }

    /// Coordinates of a matrix in the span of the basis, if it lies there.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<u8>> {
        let p = self.module.p();
        let flat: Vec<Vec<u8>> = self.basis.iter().map(|b| b.flatten()).collect();
        let cols = x.rows() * x.cols();
        let bt = Matrix::from_row_slices(p, cols, &flat).transpose();
        let rhs = Matrix::row_vector(p, &x.flatten()).transpose();
        bt.solve(&rhs).ok().flatten().map(|s| s.transpose().row(0).to_vec())
    }
}

/// The endomorphism ring together with structure constants in the computed
/// basis; multiplication is the matrix product.
pub fn end_algebra(m: &RightModule) -> Result<(EndRealization, Algebra)> {
    if m.dim == 0 {
        return Err(Error::Precondition("End of the zero module".into()));
    }
    let p = m.p();
    let hom = hom_space(m, m)?;
    let d = hom.dim();
    let md = m.dim;
    let flat: Vec<Vec<u8>> = hom.basis.iter().map(|b| b.flatten()).collect();
    let bt = Matrix::from_row_slices(p, md * md, &flat).transpose();
    let mut rhs_cols: Vec<Vec<u8>> = Vec::with_capacity(d * d + 1);
    for x in &hom.basis {
        for y in &hom.basis {
            rhs_cols.push(x.mul(y).flatten());
        }
    }
    rhs_cols.push(Matrix::identity(p, md).flatten());
    let rhs = Matrix::from_row_slices(p, md * md, &rhs_cols).transpose();
    let sol =
        bt.solve(&rhs)?.ok_or_else(|| Error::TheoremViolation("End(M) is not closed under composition".into()))?;
    let mut constants = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let c = sol.get(k, i * d + j);
                if c != 0 {
                    constants.push((i, j, k, c));
                }
            }
        }
    }
    let unit: Vec<u32> = (0..d).map(|k| sol.get(k, d * d)).collect();
    let algebra = Algebra::from_structure_constants(format!("End(M), dim M = {md}"), p, d, &constants, &unit)?
        .with_basis_names((0..d).map(|i| format!("f{i}")).collect())
        .validated()?;
    Ok((EndRealization { module: m.clone(), basis: hom.basis, contains_identity: true }, algebra))
}

/// Intertwiners `End(M)` without structure constants.
pub fn end_realization(m: &RightModule) -> Result<EndRealization> {
    let hom = hom_space(m, m)?;
    let d = m.dim;
    let identity = Matrix::identity(m.p(), d);
    let mut e = EndRealization { module: m.clone(), basis: hom.basis, contains_identity: false };
    e.contains_identity = e.coordinates(&identity).is_some();
    Ok(e)
}

fn rank_profile(m: &RightModule) -> Vec<usize> {
    m.action.iter().map(|a| a.rank()).collect()
}

/// Isomorphism invariants used to reject pairs cheaply: dimension, ranks of
/// `ρ(x)` for every algebra element (basis elements only when the algebra is
/// large), and `dim End`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoInvariant {
    dim: usize,
    ranks: Vec<u8>,
    end_dim: usize,
}

const RANK_PROFILE_LIMIT: u64 = 4096;

pub fn iso_invariant(m: &RightModule) -> Result<IsoInvariant> {
    let a = m.algebra();
    let ranks = if field_power(a.p(), a.dim()) <= RANK_PROFILE_LIMIT {
        VectorIter::new(a.p(), a.dim()).map(|x| m.element_action(&x).rank() as u8).collect()
    } else {
        rank_profile(m).into_iter().map(|r| r as u8).collect()
    };
    Ok(IsoInvariant { dim: m.dim, ranks, end_dim: if m.dim == 0 { 0 } else { hom_space(m, m)?.dim() } })
}

/// First element of `hom` satisfying `pred`: basis elements, then all
/// elements in lexicographic coefficient order. The guard bounds the number
/// of elements visited, so a hit found early never trips it.
fn search_hom(
    hom: &HomSpace,
    guard: Guard,
    what: &'static str,
    mut pred: impl FnMut(&Matrix) -> bool,
) -> Result<Option<Matrix>> {
    if let Some(x) = hom.basis.iter().find(|x| pred(x)) {
        return Ok(Some(x.clone()));
    }
    let p = hom.source.p();
    for (count, c) in VectorIter::new(p, hom.dim()).enumerate().skip(1) {
        if count as u64 >= guard.0 {
            guard.check(what, p, hom.dim())?;
        }
        let x = hom.element(&c);
        if pred(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// An invertible intertwiner `m → n`, if one exists.
pub fn are_isomorphic(m: &RightModule, n: &RightModule, guard: Guard) -> Result<Option<Matrix>> {
    m.require_same_algebra(n)?;
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Matrix::zeros(m.p(), 0, 0)));
    }
    if rank_profile(m) != rank_profile(n) {
        return Ok(None);
    }
    let hom = hom_space(m, n)?;
    if hom.dim() == 0 {
        return Ok(None);
    }
    search_hom(&hom, guard, "are_isomorphic", Matrix::is_invertible)
}

/// `rad(M) = M·rad(A)` and `soc(M) = {v : v·rad(A) = 0}`, as reduced bases.
pub fn radical_and_socle(m: &RightModule, rad_a: &Radical) -> Result<(Matrix, Matrix)> {
    let p = m.p();
    let d = m.dim;
    let mut images = Matrix::zeros(p, 0, d);
    let mut kernel_system = Matrix::zeros(p, d, 0);
    for r in 0..rad_a.basis.rows() {
        let x = m.element_action(rad_a.basis.row(r));
        images = images.vstack(&x);
        kernel_system = kernel_system.hstack(&x);
    }
    let rad = images.row_space();
    let soc =
        if rad_a.basis.rows() == 0 { Matrix::identity(p, d) } else { kernel_system.left_null_space().row_space() };
    if !m.is_action_closed(&rad) || !m.is_action_closed(&soc) {
        return Err(Error::TheoremViolation("radical or socle is not a submodule".into()));
    }
    Ok((rad, soc))
}

/// A direct summand together with its basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: RightModule,
    pub basis: Matrix,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Rows: the summand bases stacked in order. Conjugating the action by
    /// this matrix gives block-diagonal matrices with the summands' actions.
    pub certificate: Matrix,
}

impl Decomposition {
    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }
}

/// An idempotent of `End(m)` other than 0 and 1, if `m` is decomposable.
///
/// Uses Fitting's lemma: an endomorphism `f` that is neither nilpotent nor
/// invertible splits `M = Im f^d ⊕ Ker f^d` with `d = dim M`, and the
/// projection onto the image along the kernel is the idempotent. If every
/// endomorphism is nilpotent or invertible, `End(m)` is local.
pub fn nontrivial_idempotent(m: &RightModule, guard: Guard) -> Result<Option<Matrix>> {
    if m.dim == 0 {
        return Ok(None);
    }
    let hom = hom_space(m, m)?;
    let d = m.dim as u32;
    let Some(f) = search_hom(&hom, guard, "idempotent search", |x| !x.is_invertible() && !x.pow(d).is_zero())? else {
        return Ok(None);
    };
    let fd = f.pow(d);
    let image = fd.row_space();
    let kernel = fd.left_null_space().row_space();
    let change = image.vstack(&kernel);
    let mut diag = Matrix::zeros(m.p(), m.dim, m.dim);
    for i in 0..image.rows() {
        diag.set(i, i, 1);
    }
    let inv = change.inverse().ok_or_else(|| Error::TheoremViolation("Fitting decomposition is not direct".into()))?;
    Ok(Some(inv.mul(&diag).mul(&change)))
}

/// Splits `m` into indecomposable summands by recursively splitting along
/// idempotent endomorphisms `M = Me ⊕ ker e`.
pub fn decompose_indecomposable(m: &RightModule, guard: Guard) -> Result<Decomposition> {
    let p = m.p();
    let mut summands = Vec::new();
    let identity = Matrix::identity(p, m.dim);
    split_into(m, &identity, guard, &mut summands)?;
    let mut certificate = Matrix::zeros(p, 0, m.dim);
    for s in &summands {
        certificate = certificate.vstack(&s.basis);
    }
    Ok(Decomposition { summands, certificate })
}

fn split_into(m: &RightModule, embed: &Matrix, guard: Guard, out: &mut Vec<Summand>) -> Result<()> {
    if m.dim == 0 {
        return Ok(());
    }
    let Some(e) = nontrivial_idempotent(m, guard)? else {
        out.push(Summand { module: m.clone(), basis: embed.clone() });
        return Ok(());
    };
    for part in [e.row_space(), e.left_null_space().row_space()] {
        let sub = restrict(m, &part)?;
        split_into(&sub, &part.mul(embed), guard, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        cyclic_group_table, direct_product, from_group_table, matrix_algebra, prime_field, truncated_polynomial,
        upper_triangular,
    };

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    fn g() -> Guard {
        Guard::default()
    }

    #[test]
    fn regular_module_of_field() {
        let f = arc(prime_field(2).unwrap());
        let r = regular_module(&f);
        assert_eq!(r.dim(), 1);
        assert_eq!(r.action(0), &Matrix::identity(2, 1));
        assert!(is_simple(&r, g()).unwrap());
    }

    #[test]
    fn dual_numbers_regular_module() {
        let a = arc(truncated_polynomial(3, 2).unwrap());
        let r = regular_module(&a);
        let x = r.action(1);
        assert!(!x.is_zero());
        assert!(x.mul(x).is_zero());
        // x·1 = x and x·x = 0: spinning x gives a line.
        assert_eq!(spin(&r, &[0, 1]).unwrap().rows(), 1);
        assert_eq!(spin(&r, &[1, 0]).unwrap().rows(), 2);
        assert_eq!(spin(&r, &[0, 0]).unwrap().rows(), 0);
        assert!(!is_simple(&r, g()).unwrap());
    }

    #[test]
    fn axioms_checked_on_construction() {
        let a = arc(truncated_polynomial(2, 2).unwrap());
        let bad = RightModule::new(a.clone(), 1, vec![Matrix::identity(2, 1), Matrix::identity(2, 1)]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let good = RightModule::new(a, 1, vec![Matrix::identity(2, 1), Matrix::zeros(2, 1, 1)]);
        assert!(good.is_ok());
    }

    #[test]
    fn zero_module_conventions() {
        let a = arc(prime_field(2).unwrap());
        let z = RightModule::zero(a);
        assert!(!is_simple(&z, g()).unwrap());
        assert!(is_isotypic(&z, g()).unwrap());
        assert_eq!(length(&z, g()).unwrap(), 0);
        assert!(end_algebra(&z).is_err());
    }

    #[test]
    fn m2_simple_is_two_dimensional() {
        let a = arc(matrix_algebra(2, &prime_field(2).unwrap()).unwrap());
        let r = regular_module(&a);
        let factors = composition_factors(&r, g()).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.dim(), 2);
        assert_eq!(factors[0].1, 2);
        assert!(is_simple(&factors[0].0, g()).unwrap());
    }

    #[test]
    fn u2_regular_module() {
        let f2 = prime_field(2).unwrap();
        let a = arc(upper_triangular(2, &f2).unwrap());
        let r = regular_module(&a);
        assert_eq!(length(&r, g()).unwrap(), 3);
        assert!(!is_isotypic(&r, g()).unwrap());
        // basis e11, e12, e22; e12 spans a submodule
        let sq = sub_quotient(&r, &Matrix::from_rows(2, &[&[0, 1, 0]])).unwrap();
        assert_eq!(sq.quotient.dim(), 2);
        let s1 = RightModule::new(
            a.clone(),
            1,
            vec![Matrix::identity(2, 1), Matrix::zeros(2, 1, 1), Matrix::zeros(2, 1, 1)],
        )
        .unwrap();
        let s2 = RightModule::new(
            a.clone(),
            1,
            vec![Matrix::zeros(2, 1, 1), Matrix::zeros(2, 1, 1), Matrix::identity(2, 1)],
        )
        .unwrap();
        assert!(are_isomorphic(&s1, &s2, g()).unwrap().is_none());
        assert_eq!(hom_space(&s1, &s2).unwrap().dim(), 0);
        let sum = s1.direct_sum(&s2).unwrap();
        assert!(are_isomorphic(&sq.quotient, &sum, g()).unwrap().is_some());
        assert_eq!(length(&sq.sub, g()).unwrap() + length(&sq.quotient, g()).unwrap(), 3);
    }

    #[test]
    fn sub_quotient_extremes() {
        let a = arc(truncated_polynomial(2, 2).unwrap());
        let r = regular_module(&a);
        let zero = sub_quotient(&r, &Matrix::zeros(2, 0, 2)).unwrap();
        assert_eq!(zero.sub.dim(), 0);
        assert_eq!(zero.quotient.dim(), 2);
        let full = sub_quotient(&r, &Matrix::identity(2, 2)).unwrap();
        assert_eq!(full.sub.dim(), 2);
        assert_eq!(full.quotient.dim(), 0);
        assert!(matches!(sub_quotient(&r, &Matrix::from_rows(2, &[&[1, 0]])), Err(Error::NotActionClosed)));
    }

    #[test]
    fn group_algebra_factors() {
        let a = arc(from_group_table(&cyclic_group_table(3), 3).unwrap());
        let f = composition_factors(&regular_module(&a), g()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].0.dim(), f[0].1), (1, 3));

        let b = arc(from_group_table(&cyclic_group_table(3), 2).unwrap());
        let f = composition_factors(&regular_module(&b), g()).unwrap();
        let mut dims: Vec<(usize, usize)> = f.iter().map(|(m, c)| (m.dim(), *c)).collect();
        dims.sort();
        assert_eq!(dims, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn hom_into_simple_from_double() {
        let a = arc(prime_field(3).unwrap());
        let s = regular_module(&a);
        let ss = s.direct_sum(&s).unwrap();
        let h = hom_space(&ss, &s).unwrap();
        assert_eq!(h.dim(), 2);
        for x in &h.basis {
            for i in 0..a.dim() {
                assert_eq!(ss.action(i).mul(x), x.mul(s.action(i)));
            }
        }
    }

    #[test]
    fn end_of_two_dimensional_simple_of_c3_over_gf2() {
        let a = arc(from_group_table(&cyclic_group_table(3), 2).unwrap());
        let f = composition_factors(&regular_module(&a), g()).unwrap();
        let s = f.iter().find(|(m, _)| m.dim() == 2).unwrap().0.clone();
        let (e, alg) = end_algebra(&s).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(alg.validate().passed());
        assert!(alg.is_commutative());
        for c in VectorIter::new(2, 2).skip(1) {
            assert!(e.element(&c).is_invertible());
        }
    }

    #[test]
    fn isomorphic_regular_modules_in_different_bases() {
        let a = arc(truncated_polynomial(5, 2).unwrap());
        let r = regular_module(&a);
        let change = Matrix::from_rows(5, &[&[2, 3], &[1, 1]]);
        let r2 = r.change_basis(&change).unwrap();
        let iso = are_isomorphic(&r, &r2, g()).unwrap().unwrap();
        assert!(iso.is_invertible());
        for i in 0..a.dim() {
            assert_eq!(r.action(i).mul(&iso), iso.mul(r2.action(i)));
        }
        assert_eq!(are_isomorphic(&r, &r, g()).unwrap().map(|x| x.is_invertible()), Some(true));
    }

    #[test]
    fn decompose_product_of_fields() {
        let f2 = prime_field(2).unwrap();
        let a = arc(direct_product(&f2, &f2).unwrap());
        let d = decompose_indecomposable(&regular_module(&a), g()).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(d.summands.iter().all(|s| s.module.dim() == 1));
    }

    #[test]
    fn decomposition_certificate_is_block_diagonal() {
        let a = arc(direct_product(&prime_field(2).unwrap(), &truncated_polynomial(2, 2).unwrap()).unwrap());
        let r = regular_module(&a);
        let d = decompose_indecomposable(&r, g()).unwrap();
        let mut dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let conj = r.change_basis(&d.certificate).unwrap();
        let mut block_sum = RightModule::zero(a.clone());
        for s in &d.summands {
            block_sum = block_sum.direct_sum(&s.module).unwrap();
        }
        assert_eq!(conj.actions(), block_sum.actions());
    }

    #[test]
    fn simple_decomposes_to_itself() {
        let a = arc(prime_field(3).unwrap());
        let s = regular_module(&a);
        let d = decompose_indecomposable(&s, g()).unwrap();
        assert!(d.is_indecomposable());
    }

    #[test]
    fn radical_and_socle_of_dual_numbers() {
        let a = arc(truncated_polynomial(2, 2).unwrap());
        let rad = Radical { basis: Matrix::from_rows(2, &[&[0, 1]]), nilpotency_index: 2 };
        let (r, s) = radical_and_socle(&regular_module(&a), &rad).unwrap();
        assert_eq!(r, Matrix::from_rows(2, &[&[0, 1]]));
        assert_eq!(s, r);
    }

    #[test]
    fn guard_is_enforced() {
        let a = arc(truncated_polynomial(2, 2).unwrap());
        let r = regular_module(&a);
        assert!(matches!(is_simple(&r, Guard(3)), Err(Error::GuardExceeded { .. })));
    }
}
