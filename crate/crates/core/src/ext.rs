//! Ext¹ by cocycles, extensions built from cocycles, and the right Gabriel
//! quiver.
//!
//! An extension `0 → bottom → E → top → 0` is written in block form
//! `ρ_E(a) = [[ρ_top(a), δ(a)], [0, ρ_bottom(a)]]` on row vectors
//! `(u_top, w_bottom)`, so the bottom coordinates span the submodule. `ρ_E`
//! is multiplicative exactly when
//! `δ(a_i a_j) = ρ_top(a_i) δ(a_j) + δ(a_i) ρ_bottom(a_j)`, and the base
//! change `[[I, X], [0, I]]` moves `δ` by the coboundary
//! `a ↦ ρ_top(a) X − X ρ_bottom(a)`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Guard, Result};
use crate::linalg::{EchelonBasis, Matrix, VectorIter};
use crate::module::{are_isomorphic, composition_series, end_realization, regular_module, RightModule};

/// Version tag written into every JSON and DOT artifact.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct SimpleEntry {
    pub module: RightModule,
    pub end_dim: usize,
    /// Position in the composition series of the regular module where this
    /// class first appeared.
    pub provenance: usize,
}

/// Pairwise nonisomorphic simples, one per isomorphism class, ordered by
/// dimension and then by discovery.
#[derive(Clone, Debug)]
pub struct SimpleInventory {
    pub algebra: Arc<Algebra>,
    pub simples: Vec<SimpleEntry>,
}

impl SimpleInventory {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn modules(&self) -> impl Iterator<Item = &RightModule> {
        self.simples.iter().map(|s| &s.module)
    }

    pub fn get(&self, i: usize) -> &RightModule {
        &self.simples[i].module
    }

    /// Index of the inventory simple isomorphic to `s`.
    pub fn index_of(&self, s: &RightModule, guard: Guard) -> Result<Option<usize>> {
        for (i, entry) in self.simples.iter().enumerate() {
            if entry.module.dim() == s.dim() && are_isomorphic(&entry.module, s, guard)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Composition multiplicities of `m`, indexed like the inventory.
    pub fn profile(&self, m: &RightModule, guard: Guard) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.len()];
        for f in composition_series(m, guard)? {
            let i = self.index_of(&f, guard)?.ok_or_else(|| {
                Error::TheoremViolation("composition factor missing from the simple inventory".into())
            })?;
            counts[i] += 1;
        }
        Ok(counts)
    }
}

/// Index of the first algebra basis element acting nonzero on `s`.
fn first_active(s: &RightModule) -> usize {
    s.actions().iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX)
}

/// Simples of `a` from the composition factors of the regular module,
/// ordered by dimension, then by the first basis element acting nonzero,
/// then by discovery order.
pub fn simple_inventory(a: &Arc<Algebra>, guard: Guard) -> Result<SimpleInventory> {
    let mut simples: Vec<SimpleEntry> = Vec::new();
    'factors: for (pos, f) in composition_series(&regular_module(a), guard)?.into_iter().enumerate() {
        for s in &simples {
            if s.module.dim() == f.dim() && are_isomorphic(&s.module, &f, guard)?.is_some() {
                continue 'factors;
            }
        }
        let end_dim = end_realization(&f)?.dim();
        simples.push(SimpleEntry { module: f, end_dim, provenance: pos });
    }
    simples.sort_by_key(|s| (s.module.dim(), first_active(&s.module), s.provenance));
    Ok(SimpleInventory { algebra: a.clone(), simples })
}

/// A 1-cochain: one `dim top × dim bottom` block per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub blocks: Vec<Matrix>,
}

impl Cocycle {
    pub fn flatten(&self) -> Vec<u8> {
        self.blocks.iter().flat_map(|b| b.as_slice().iter().copied()).collect()
    }

    fn from_flat(p: u32, n: usize, s: usize, t: usize, flat: &[u8]) -> Self {
        let block = s * t;
        Cocycle { blocks: (0..n).map(|k| Matrix::from_flat(p, s, t, &flat[k * block..(k + 1) * block])).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }
}

/// Cocycles `Z`, coboundaries `B` and a complement of `B` in `Z`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub top: RightModule,
    pub bottom: RightModule,
    /// Rows: flattened cocycles.
    pub cocycles: Matrix,
    /// Rows: flattened coboundaries.
    pub coboundaries: Matrix,
    /// Rows: cocycles whose classes form a basis of Ext¹(top, bottom).
    pub class_basis: Matrix,
    pub ext_dim: usize,
    equations: Matrix,
}

fn cocycle_equations(top: &RightModule, bottom: &RightModule) -> Matrix {
    let a = top.algebra();
    let p = a.p();
    let n = a.dim();
    let (s, t) = (top.dim(), bottom.dim());
    let block = s * t;
    let unknowns = n * block;
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for r in 0..s {
                for c in 0..t {
                    let mut eq = vec![0u8; unknowns];
                    let mut add = |idx: usize, v: u32| eq[idx] = ((eq[idx] as u32 + v) % p) as u8;
                    // Σ_k c_ijk δ_k[r][c]
                    for k in 0..n {
                        let v = a.constant(i, j, k);
                        if v != 0 {
                            add(k * block + r * t + c, v);
                        }
                    }
                    // − Σ_l ρ_top(a_i)[r][l] δ_j[l][c]
                    for l in 0..s {
                        let v = top.action(i).get(r, l);
                        if v != 0 {
                            add(j * block + l * t + c, p - v);
                        }
                    }
                    // − Σ_l δ_i[r][l] ρ_bottom(a_j)[l][c]
                    for l in 0..t {
                        let v = bottom.action(j).get(l, c);
                        if v != 0 {
                            add(i * block + r * t + l, p - v);
                        }
                    }
                    if eq.iter().any(|&e| e != 0) {
                        eqs.push(eq);
                    }
                }
            }
        }
    }
    Matrix::from_row_slices(p, unknowns, &eqs)
}

/// Coboundary of `X`: `a_k ↦ ρ_top(a_k) X − X ρ_bottom(a_k)`.
pub fn coboundary(top: &RightModule, bottom: &RightModule, x: &Matrix) -> Cocycle {
    Cocycle { blocks: top.actions().iter().zip(bottom.actions()).map(|(at, ab)| at.mul(x).sub(&x.mul(ab))).collect() }
}

/// Ext¹(top, bottom): extensions `0 → bottom → E → top → 0`.
pub fn ext_space(top: &RightModule, bottom: &RightModule) -> Result<CocycleSpace> {
    if !top.same_algebra(bottom) {
        return Err(Error::AlgebraMismatch);
    }
    let p = top.p();
    let (s, t) = (top.dim(), bottom.dim());
    let equations = cocycle_equations(top, bottom);
    let cocycles = equations.null_space();

    let mut b = EchelonBasis::new(p, equations.cols());
    for r in 0..s {
        for c in 0..t {
            let mut x = Matrix::zeros(p, s, t);
            x.set(r, c, 1);
            b.insert(&coboundary(top, bottom, &x).flatten());
        }
    }
    let coboundaries = b.to_matrix();
    if equations.rows() > 0 && coboundaries.rows() > 0 && !equations.mul(&coboundaries.transpose()).is_zero() {
        return Err(Error::TheoremViolation("a coboundary fails the cocycle identity".into()));
    }
    let mut classes = b;
    let mut class_rows = Vec::new();
    for r in 0..cocycles.rows() {
        if classes.insert(cocycles.row(r)) {
            class_rows.push(cocycles.row(r).to_vec());
        }
    }
    let ext_dim = cocycles.rows() - coboundaries.rows();
    debug_assert_eq!(ext_dim, class_rows.len());
    let class_basis = Matrix::from_row_slices(p, equations.cols(), &class_rows);
    Ok(CocycleSpace {
        top: top.clone(),
        bottom: bottom.clone(),
        cocycles,
        coboundaries,
        class_basis,
        ext_dim,
        equations,
    })
}

/// Middle term of an extension, with its structure maps.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: RightModule,
    /// Rows: the embedded copy of `bottom` in `module` coordinates.
    pub bottom_basis: Matrix,
    /// `dim E × dim top`: the projection onto `top`.
    pub projection: Matrix,
    pub split: bool,
}

impl CocycleSpace {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.top.algebra()
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.algebra().dim(), self.top.dim(), self.bottom.dim())
    }

    pub fn cocycle_from_flat(&self, flat: &[u8]) -> Cocycle {
        let (n, s, t) = self.shape();
        Cocycle::from_flat(self.top.p(), n, s, t, flat)
    }

    pub fn is_cocycle(&self, c: &Cocycle) -> bool {
        let flat = c.flatten();
        flat.len() == self.equations.cols()
            && (self.equations.rows() == 0
                || self.equations.mul(&Matrix::row_vector(self.top.p(), &flat).transpose()).is_zero())
    }

    pub fn is_coboundary(&self, c: &Cocycle) -> bool {
        EchelonBasis::from_matrix(&self.coboundaries).contains(&c.flatten())
    }

    /// The cocycle `Σ coeffs[i] · class_basis[i]`.
    pub fn class_representative(&self, coeffs: &[u8]) -> Cocycle {
        let p = self.top.p();
        let mut flat = vec![0u8; self.equations.cols()];
        for (i, &c) in coeffs.iter().enumerate() {
            for (x, &y) in flat.iter_mut().zip(self.class_basis.row(i)) {
                *x = ((*x as u32 + c as u32 * y as u32) % p) as u8;
            }
        }
        self.cocycle_from_flat(&flat)
    }

    /// One representative per class, zero class first, in lexicographic
    /// coefficient order.
    pub fn class_representatives(&self, guard: Guard) -> Result<Vec<Cocycle>> {
        guard.check("extension classes", self.top.p(), self.ext_dim)?;
        Ok(VectorIter::new(self.top.p(), self.ext_dim).map(|c| self.class_representative(&c)).collect())
    }

    /// Whether two cocycles define the same class.
    pub fn same_class(&self, a: &Cocycle, b: &Cocycle) -> bool {
        self.is_coboundary(&a.add(&Cocycle { blocks: b.blocks.iter().map(|m| m.neg()).collect() }))
    }

    pub fn extension(&self, cocycle: &Cocycle) -> Result<Extension> {
        if !self.is_cocycle(cocycle) {
            return Err(Error::InvalidInput("cochain fails the cocycle identity".into()));
        }
        let p = self.top.p();
        let (_, s, t) = self.shape();
        let action = self
            .top
            .actions()
            .iter()
            .zip(self.bottom.actions())
            .zip(&cocycle.blocks)
            .map(|((at, ab), d)| {
                let mut m = at.direct_sum(ab);
                m.set_block(0, s, d);
                m
            })
            .collect();
        let module = RightModule::from_parts(self.algebra().clone(), s + t, action);
        let bottom_basis = Matrix::zeros(p, t, s).hstack(&Matrix::identity(p, t));
        let projection = Matrix::identity(p, s).vstack(&Matrix::zeros(p, t, s));
        Ok(Extension { module, bottom_basis, projection, split: self.is_coboundary(cocycle) })
    }
}

/// Builds `0 → bottom → E → top → 0` from a cocycle.
pub fn extension_from_cocycle(top: &RightModule, bottom: &RightModule, cocycle: &Cocycle) -> Result<Extension> {
    ext_space(top, bottom)?.extension(cocycle)
}

/// Reads the cocycle back off a module in extension block form.
pub fn cocycle_of(e: &RightModule, top_dim: usize) -> Cocycle {
    let t = e.dim() - top_dim;
    Cocycle { blocks: e.actions().iter().map(|m| m.block(0, top_dim, top_dim, t)).collect() }
}

#[derive(Clone, Debug)]
pub struct GabrielQuiver {
    pub inventory: SimpleInventory,
    /// `ext_dims[i][j] = dim Ext¹(S_i, S_j)` over GF(p).
    pub ext_dims: Vec<Vec<usize>>,
    /// Pairs `(i, j)` with `ext_dims[i][j] > 0`, loops included.
    pub arrows: Vec<(usize, usize)>,
    pub disconnected: bool,
}

pub fn gabriel_quiver(a: &Arc<Algebra>, guard: Guard) -> Result<GabrielQuiver> {
    let inventory = simple_inventory(a, guard)?;
    quiver_from_inventory(inventory)
}

pub fn quiver_from_inventory(inventory: SimpleInventory) -> Result<GabrielQuiver> {
    let n = inventory.len();
    let mut ext_dims = vec![vec![0; n]; n];
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = ext_space(inventory.get(i), inventory.get(j))?.ext_dim;
            ext_dims[i][j] = d;
            if d > 0 {
                arrows.push((i, j));
            }
        }
    }
    let mut q = GabrielQuiver { inventory, ext_dims, arrows, disconnected: false };
    q.disconnected = is_totally_disconnected(&q);
    Ok(q)
}

/// No arrows between distinct vertices; loops are allowed.
pub fn is_totally_disconnected(q: &GabrielQuiver) -> bool {
    q.arrows.iter().all(|&(i, j)| i == j)
}

impl GabrielQuiver {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inventory.algebra
    }

    pub fn vertex_count(&self) -> usize {
        self.inventory.len()
    }

    /// First arrow between distinct vertices, in `(i, j)` order.
    pub fn first_proper_arrow(&self) -> Option<(usize, usize)> {
        self.arrows.iter().copied().find(|&(i, j)| i != j)
    }

    pub fn conclusion(&self) -> &'static str {
        if self.disconnected {
            "FinLen has CSL"
        } else {
            "FinLen does not have CSL (witness available)"
        }
    }

    pub fn report(&self) -> QuiverReport {
        let a = self.algebra();
        let vertices = self
            .inventory
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| VertexReport { name: format!("S{}", i + 1), dim: s.module.dim(), end_dim: s.end_dim })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|&(i, j)| {
                let d = self.ext_dims[i][j];
                let over = |e: usize| if e > 0 && d.is_multiple_of(e) { Some(d / e) } else { None };
                ArrowReport {
                    source: format!("S{}", i + 1),
                    target: format!("S{}", j + 1),
                    ext_dim: d,
                    dim_over_end_target: over(self.inventory.simples[j].end_dim),
                    dim_over_end_source: over(self.inventory.simples[i].end_dim),
                    is_loop: i == j,
                }
            })
            .collect();
        QuiverReport {
            format_version: FORMAT_VERSION,
            label: a.label().to_string(),
            p: a.p(),
            algebra_dim: a.dim(),
            vertices,
            ext_dims: self.ext_dims.clone(),
            arrows,
            totally_disconnected: self.disconnected,
            conclusion: self.conclusion().to_string(),
        }
    }

    /// Graphviz rendering; vertices `S1..Sn` in inventory order, one line
    /// per arrow labelled by its Ext dimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("// format_version {FORMAT_VERSION}\n"));
        out.push_str("digraph gabriel_quiver {\n");
        out.push_str(&format!("  label=\"{}\";\n", self.algebra().label().replace('"', "'")));
        for (i, s) in self.inventory.simples.iter().enumerate() {
            out.push_str(&format!(
                "  S{} [label=\"S{} (dim {}, End dim {})\"];\n",
                i + 1,
                i + 1,
                s.module.dim(),
                s.end_dim
            ));
        }
        for &(i, j) in &self.arrows {
            out.push_str(&format!("  S{} -> S{} [label=\"{}\"];\n", i + 1, j + 1, self.ext_dims[i][j]));
        }
        out.push_str("}\n");
        out
    }
}

pub fn to_dot(q: &GabrielQuiver) -> String {
    q.to_dot()
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub name: String,
    pub dim: usize,
    pub end_dim: usize,
}

/// An arrow with its Ext dimension over GF(p) and, for reference, over the
/// endomorphism division rings of its endpoints.
#[derive(Clone, Debug, Serialize)]
pub struct ArrowReport {
    pub source: String,
    pub target: String,
    pub ext_dim: usize,
    pub dim_over_end_target: Option<usize>,
    pub dim_over_end_source: Option<usize>,
    pub is_loop: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverReport {
    pub format_version: u32,
    pub label: String,
    pub p: u32,
    pub algebra_dim: usize,
    pub vertices: Vec<VertexReport>,
    pub ext_dims: Vec<Vec<usize>>,
    pub arrows: Vec<ArrowReport>,
    pub totally_disconnected: bool,
    pub conclusion: String,
}
