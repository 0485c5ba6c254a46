//! Finite-dimensional associative unital algebras over GF(p), given by
//! structure constants, and the standard constructions used to build test
//! algebras: path algebras modulo relations, group algebras, upper
//! triangular and full matrix algebras, and direct products.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::SimpleInventory;
use crate::linalg::{check_prime, EchelonBasis, Matrix};

/// An algebra with basis `a_0, …, a_{n-1}` and `a_i a_j = Σ_k c[i][j][k] a_k`.
#[derive(Clone, Debug)]
pub struct Algebra {
    label: String,
    p: u32,
    dim: usize,
    /// Dense `c[(i * dim + j) * dim + k]`.
    table: Vec<u8>,
    unit: Vec<u8>,
    basis_names: Vec<String>,
}

/// One structure constant `a_i a_j ∋ c · a_k`.
pub type StructureConstant = (usize, usize, usize, u32);

impl Algebra {
    /// Builds an algebra from sparse structure constants. Only ranges are
    /// checked here; the algebra laws are checked by [`Algebra::validate`].
    /// Repeated quadruples for the same `(i, j, k)` are summed.
    pub fn from_structure_constants(
        label: impl Into<String>,
        p: u32,
        dim: usize,
        constants: &[StructureConstant],
        unit: &[u32],
    ) -> Result<Self> {
        check_prime(p)?;
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        let mut table = vec![0u8; dim * dim * dim];
        for &(i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if c >= p {
                return Err(Error::InvalidAlgebra(format!("coefficient {c} is not a residue mod {p}")));
            }
            let slot = &mut table[(i * dim + j) * dim + k];
            *slot = ((*slot as u32 + c) % p) as u8;
        }
        if let Some(&u) = unit.iter().find(|&&u| u >= p) {
            return Err(Error::InvalidAlgebra(format!("unit coordinate {u} is not a residue mod {p}")));
        }
        Ok(Algebra {
            label: label.into(),
            p,
            dim,
            table,
            unit: unit.iter().map(|&u| u as u8).collect(),
            basis_names: (0..dim).map(|i| format!("a{i}")).collect(),
        })
    }

    fn from_dense(label: String, p: u32, dim: usize, table: Vec<u8>, unit: Vec<u8>, names: Vec<String>) -> Self {
        debug_assert_eq!(table.len(), dim * dim * dim);
        debug_assert_eq!(names.len(), dim);
        Algebra { label, p, dim, table, unit, basis_names: names }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.basis_names = names;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u8] {
        &self.unit
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.table[(i * self.dim + j) * self.dim + k] as u32
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if c != 0 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Same field, dimension, multiplication and unit (labels ignored).
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.p == other.p && self.dim == other.dim && self.table == other.table && self.unit == other.unit
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let n = self.dim;
        let p = self.p;
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = xi as u32 * yj as u32 % p;
                let row = &self.table[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, &c) in out.iter_mut().zip(row) {
                    if c != 0 {
                        *o = (*o + s * c as u32) % p;
                    }
                }
            }
        }
        out.into_iter().map(|v| v as u8).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of `v ↦ v·y` on row vectors of coordinates.
    pub fn right_multiplication(&self, y: &[u8]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            let row = self.multiply(&self.basis_vector(i), y);
            for (k, &v) in row.iter().enumerate() {
                m.set(i, k, v as u32);
            }
        }
        m
    }

    /// Matrix of `v ↦ x·v` on row vectors of coordinates.
    pub fn left_multiplication(&self, x: &[u8]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.p, n, n);
        for j in 0..n {
            let row = self.multiply(x, &self.basis_vector(j));
            for (k, &v) in row.iter().enumerate() {
                m.set(j, k, v as u32);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    /// Exhaustive check of associativity on basis triples and of the unit laws.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let p = self.p;
        let mut first_assoc = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut lhs = 0u32;
                        let mut rhs = 0u32;
                        for k in 0..n {
                            lhs += self.constant(i, j, k) * self.constant(k, l, m);
                            rhs += self.constant(j, l, k) * self.constant(i, k, m);
                        }
                        if lhs % p != rhs % p {
                            first_assoc = Some([i, j, l]);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let mut first_unit = None;
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.multiply(&self.unit, &e) != e || self.multiply(&e, &self.unit) != e {
                first_unit = Some(i);
                break;
            }
        }
        ValidationReport {
            label: self.label.clone(),
            dim: n,
            p,
            associative: first_assoc.is_none(),
            unital: first_unit.is_none(),
            first_associativity_violation: first_assoc,
            first_unit_violation: first_unit,
        }
    }

    /// Returns `self` if it validates, otherwise an error naming the violation.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::InvalidAlgebra(report.describe()))
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub label: String,
    pub dim: usize,
    pub p: u32,
    pub associative: bool,
    pub unital: bool,
    pub first_associativity_violation: Option<[usize; 3]>,
    pub first_unit_violation: Option<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.associative && self.unital
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some([i, j, l]) = self.first_associativity_violation {
            parts.push(format!("associativity fails on basis triple ({i}, {j}, {l})"));
        }
        if let Some(i) = self.first_unit_violation {
            parts.push(format!("unit law fails on basis element {i}"));
        }
        if parts.is_empty() {
            "ok".into()
        } else {
            parts.join("; ")
        }
    }
}

/// The prime field GF(p) as a one-dimensional algebra.
pub fn prime_field(p: u32) -> Result<Algebra> {
    Ok(Algebra::from_structure_constants(format!("GF({p})"), p, 1, &[(0, 0, 0, 1)], &[1])?
        .with_basis_names(vec!["1".into()]))
}

/// `GF(p)[t]/(t^n)` with basis `1, t, …, t^{n-1}`.
pub fn truncated_polynomial(p: u32, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("truncation degree must be at least 1".into()));
    }
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            constants.push((i, j, i + j, 1));
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    Ok(Algebra::from_structure_constants(format!("GF({p})[t]/(t^{n})"), p, n, &constants, &unit)?
        .with_basis_names(names))
}

/// Group algebra GF(p)G from a multiplication table `table[g][h] = gh`.
pub fn from_group_table(table: &[Vec<usize>], p: u32) -> Result<Algebra> {
    check_prime(p)?;
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidAlgebra("group table is empty".into()));
    }
    for (g, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidAlgebra(format!("group table row {g} has length {}", row.len())));
        }
        if let Some(&h) = row.iter().find(|&&h| h >= n) {
            return Err(Error::InvalidAlgebra(format!("group table entry {h} out of range")));
        }
        let mut seen = vec![false; n];
        for &h in row {
            if std::mem::replace(&mut seen[h], true) {
                return Err(Error::InvalidAlgebra(format!("group table row {g} repeats {h}")));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            if std::mem::replace(&mut seen[row[c]], true) {
                return Err(Error::InvalidAlgebra(format!("group table column {c} repeats {}", row[c])));
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::InvalidAlgebra("group table has no identity".into()))?;
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
            return Err(Error::InvalidAlgebra(format!("element {g} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidAlgebra(format!("group table not associative on ({a}, {b}, {c})")));
                }
            }
        }
    }
    let mut constants = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            constants.push((g, h, table[g][h], 1));
        }
    }
    let mut unit = vec![0; n];
    unit[identity] = 1;
    Ok(Algebra::from_structure_constants(format!("GF({p})G(|G|={n})"), p, n, &constants, &unit)?
        .with_basis_names((0..n).map(|g| format!("g{g}")).collect()))
}

/// Multiplication table of the cyclic group of order `n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect()
}

/// Matrices over `base` supported on the given positions `(row, col)`.
/// The positions must be closed under the products that occur.
fn matrix_units(base: &Algebra, n: usize, positions: &[(usize, usize)], label: String) -> Algebra {
    let b = base.dim;
    let dim = positions.len() * b;
    let index: HashMap<(usize, usize), usize> = positions.iter().enumerate().map(|(i, &rs)| (rs, i)).collect();
    let mut table = vec![0u8; dim * dim * dim];
    for (pi, &(r, s)) in positions.iter().enumerate() {
        for (pj, &(t, u)) in positions.iter().enumerate() {
            if s != t {
                continue;
            }
            let pk = index[&(r, u)];
            for i in 0..b {
                for j in 0..b {
                    for k in 0..b {
                        let c = base.constant(i, j, k);
                        if c != 0 {
                            let (x, y, z) = (pi * b + i, pj * b + j, pk * b + k);
                            table[(x * dim + y) * dim + z] = c as u8;
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0u8; dim];
    for d in 0..n {
        let pd = index[&(d, d)];
        for (k, &u) in base.unit.iter().enumerate() {
            unit[pd * b + k] = u;
        }
    }
    let mut names = Vec::with_capacity(dim);
    for &(r, s) in positions {
        for bn in &base.basis_names {
            if b == 1 {
                names.push(format!("e{}{}", r + 1, s + 1));
            } else {
                names.push(format!("e{}{}*{bn}", r + 1, s + 1));
            }
        }
    }
    Algebra::from_dense(label, base.p, dim, table, unit, names)
}

/// Upper triangular `n × n` matrices over `base`; basis ordered by position
/// `(r, s)`, `r <= s`, row-major, then by the basis of `base`.
pub fn upper_triangular(n: usize, base: &Algebra) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be at least 1".into()));
    }
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |s| (r, s))).collect();
    Ok(matrix_units(base, n, &positions, format!("U{n}({})", base.label)))
}

/// Full matrix algebra `M_n(base)`.
pub fn matrix_algebra(n: usize, base: &Algebra) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be at least 1".into()));
    }
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).collect();
    Ok(matrix_units(base, n, &positions, format!("M{n}({})", base.label)))
}

/// `a × b` with componentwise operations; basis of `a` first.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.p != b.p {
        return Err(Error::InvalidAlgebra(format!("cannot multiply GF({}) and GF({}) algebras", a.p, b.p)));
    }
    let (m, n) = (a.dim, b.dim);
    let dim = m + n;
    let mut table = vec![0u8; dim * dim * dim];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                table[(i * dim + j) * dim + k] = a.constant(i, j, k) as u8;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                table[((m + i) * dim + m + j) * dim + m + k] = b.constant(i, j, k) as u8;
            }
        }
    }
    let mut unit = a.unit.clone();
    unit.extend_from_slice(&b.unit);
    let names = a
        .basis_names
        .iter()
        .map(|s| format!("({s},0)"))
        .chain(b.basis_names.iter().map(|s| format!("(0,{s})")))
        .collect();
    Ok(Algebra::from_dense(format!("{} x {}", a.label, b.label), a.p, dim, table, unit, names))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term `coeff · (path)` of a relation; the path lists arrow names in
/// the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u32,
    pub path: Vec<String>,
}

/// A quiver with relations, used as a presentation device. Paths compose
/// left to right: `ab` is defined when `target(a) = source(b)`, so that the
/// right module `e_i A` is the projective cover of the simple at `i` and an
/// arrow `i → j` yields `Ext¹(S_i, S_j) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithRelations {
    pub p: u32,
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm>>,
    /// Paths of length `>= cutoff` are zero.
    pub cutoff: usize,
    pub label: String,
}

/// Hard cap on the number of paths below the cutoff.
const MAX_PATHS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl QuiverWithRelations {
    fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::InvalidAlgebra(format!("relation refers to unknown arrow {name:?}")))
    }

    fn check(&self) -> Result<()> {
        check_prime(self.p)?;
        if self.vertex_count == 0 {
            return Err(Error::InvalidAlgebra("quiver needs at least one vertex".into()));
        }
        if self.cutoff == 0 {
            return Err(Error::InvalidAlgebra("cutoff must be at least 1".into()));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertex_count || a.target >= self.vertex_count {
                return Err(Error::InvalidAlgebra(format!("arrow {:?} has an endpoint out of range", a.name)));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            for term in rel {
                if term.coeff >= self.p {
                    return Err(Error::InvalidAlgebra(format!(
                        "relation {ri}: coefficient {} not mod {}",
                        term.coeff, self.p
                    )));
                }
                let path = self.resolve(&term.path)?;
                let e = (path.start, path.end);
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::InvalidAlgebra(format!(
                            "relation {ri} mixes paths with endpoints {prev:?} and {e:?}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn resolve(&self, names: &[String]) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::InvalidAlgebra("relation terms must be paths of positive length".into()));
        }
        let idx: Vec<usize> = names.iter().map(|n| self.arrow_index(n)).collect::<Result<_>>()?;
        for w in idx.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::InvalidAlgebra(format!(
                    "path {names:?} is not composable at {:?} -> {:?}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(Path { start: self.arrows[idx[0]].source, end: self.arrows[*idx.last().unwrap()].target, arrows: idx })
    }

    /// All paths of length `< cutoff`, by length then lexicographically.
    fn paths(&self) -> Result<Vec<Path>> {
        let mut all: Vec<Path> = (0..self.vertex_count).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        let mut frontier: Vec<Path> = Vec::new();
        for len in 1..self.cutoff {
            let next: Vec<Path> = if len == 1 {
                self.arrows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| Path { start: a.source, end: a.target, arrows: vec![i] })
                    .collect()
            } else {
                let mut out = Vec::new();
                for path in &frontier {
                    for (i, a) in self.arrows.iter().enumerate() {
                        if a.source == path.end {
                            let mut arrows = path.arrows.clone();
                            arrows.push(i);
                            out.push(Path { start: path.start, end: a.target, arrows });
                        }
                    }
                }
                out
            };
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            if all.len() > MAX_PATHS {
                return Err(Error::InvalidInput(format!("more than {MAX_PATHS} paths below the cutoff")));
            }
            frontier = next;
        }
        Ok(all)
    }

    fn path_name(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            format!("e{}", path.start + 1)
        } else {
            path.arrows.iter().map(|&i| self.arrows[i].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// Path algebra of `q` modulo the ideal generated by its relations and by
/// all paths of length `>= q.cutoff`.
///
/// The basis consists of the residues of those paths that are not leading
/// terms of the relation ideal, where leading terms are taken with the
/// longest (latest) paths first.
pub fn from_quiver(q: &QuiverWithRelations) -> Result<Algebra> {
    q.check()?;
    let p = q.p;
    let paths = q.paths()?;
    let np = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, path)| (path, i)).collect();
    let concat = |u: &Path, w: &Path| -> Option<usize> {
        if u.end != w.start {
            return None;
        }
        if u.arrows.len() + w.arrows.len() >= q.cutoff {
            return None;
        }
        let mut arrows = u.arrows.clone();
        arrows.extend_from_slice(&w.arrows);
        let path = Path { start: u.start, end: w.end, arrows };
        index.get(&path).copied()
    };
    // Coordinates are stored reversed so echelon pivots fall on the longest paths.
    let rev = |i: usize| np - 1 - i;

    let mut ideal = EchelonBasis::new(p, np);
    for rel in &q.relations {
        let mut terms: Vec<(usize, u32)> = Vec::new();
        for term in rel {
            let path = q.resolve(&term.path)?;
            if path.arrows.len() < q.cutoff {
                terms.push((index[&path], term.coeff));
            }
        }
        for u in &paths {
            for w in &paths {
                let mut v = vec![0u8; np];
                let mut nonzero = false;
                for &(ti, c) in &terms {
                    let Some(uv) = concat(u, &paths[ti]) else { continue };
                    let Some(uvw) = concat(&paths[uv], w) else { continue };
                    let slot = &mut v[rev(uvw)];
                    *slot = ((*slot as u32 + c) % p) as u8;
                    nonzero = true;
                }
                if nonzero {
                    ideal.insert(&v);
                }
            }
        }
    }
    let ideal_matrix = ideal.to_matrix();
    let leading: Vec<usize> =
        (0..ideal_matrix.rows()).map(|r| rev(ideal_matrix.row(r).iter().position(|&e| e != 0).unwrap())).collect();
    let basis: Vec<usize> = (0..np).filter(|i| !leading.contains(i)).collect();
    let dim = basis.len();
    let coords = |path_vec: &[u8]| -> Vec<u8> {
        let reduced = ideal.reduce(path_vec);
        basis.iter().map(|&b| reduced[rev(b)]).collect()
    };

    let mut table = vec![0u8; dim * dim * dim];
    for (bi, &i) in basis.iter().enumerate() {
        for (bj, &j) in basis.iter().enumerate() {
            if let Some(k) = concat(&paths[i], &paths[j]) {
                let mut v = vec![0u8; np];
                v[rev(k)] = 1;
                for (bk, c) in coords(&v).into_iter().enumerate() {
                    table[(bi * dim + bj) * dim + bk] = c;
                }
            }
        }
    }
    let mut unit_paths = vec![0u8; np];
    for v in 0..q.vertex_count {
        unit_paths[rev(v)] = 1;
    }
    let unit = coords(&unit_paths);
    let names = basis.iter().map(|&i| q.path_name(&paths[i])).collect();
    let label = if q.label.is_empty() { "path algebra".to_string() } else { q.label.clone() };
    Ok(Algebra::from_dense(label, p, dim, table, unit, names))
}

/// Basis of the Jacobson radical together with its nilpotency index.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Rows are elements of the algebra in basis coordinates.
    pub basis: Matrix,
    /// Least `k` with `rad^k = 0`.
    pub nilpotency_index: usize,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// The radical as the joint kernel of the representations on all simples.
///
/// Fails if the result is not a nilpotent two-sided ideal, which can only
/// happen when the inventory is incomplete.
pub fn radical_ideal(a: &Arc<Algebra>, simples: &SimpleInventory) -> Result<Radical> {
    let n = a.dim();
    let p = a.p();
    if simples.is_empty() {
        return Err(Error::Precondition("simple inventory is empty".into()));
    }
    // Row i lists the entries of ρ_S(a_i) for every simple S.
    let mut rows: Vec<Vec<u8>> = vec![Vec::new(); n];
    for s in simples.modules() {
        if !Arc::ptr_eq(s.algebra(), a) && !s.algebra().same_structure(a) {
            return Err(Error::AlgebraMismatch);
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend_from_slice(s.action(i).as_slice());
        }
    }
    let width = rows[0].len();
    let joint = Matrix::from_row_slices(p, width, &rows);
    let basis = joint.left_null_space().row_space();

    let member = EchelonBasis::from_matrix(&basis);
    for r in 0..basis.rows() {
        for i in 0..n {
            let e = a.basis_vector(i);
            if !member.contains(&a.multiply(&e, basis.row(r))) || !member.contains(&a.multiply(basis.row(r), &e)) {
                return Err(Error::TheoremViolation("computed radical is not a two-sided ideal".into()));
            }
        }
    }

    let mut power = basis.clone();
    let mut index = 1;
    while power.rows() > 0 {
        if index > n + 1 {
            return Err(Error::TheoremViolation(
                "computed radical is not nilpotent; the simple inventory is incomplete".into(),
            ));
        }
        let mut next = EchelonBasis::new(p, n);
        for r in 0..power.rows() {
            for s in 0..basis.rows() {
                next.insert(&a.multiply(power.row(r), basis.row(s)));
            }
        }
        let next = next.to_matrix();
        if next.rows() == power.rows() {
            return Err(Error::TheoremViolation(
                "computed radical is not nilpotent; the simple inventory is incomplete".into(),
            ));
        }
        power = next;
        index += 1;
    }
    let nilpotency_index = if basis.rows() == 0 { 1 } else { index };
    Ok(Radical { basis, nilpotency_index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2xgf2() -> Algebra {
        Algebra::from_structure_constants("GF(2)xGF(2)", 2, 2, &[(0, 0, 0, 1), (1, 1, 1, 1)], &[1, 1]).unwrap()
    }

    fn a2(p: u32) -> QuiverWithRelations {
        QuiverWithRelations {
            p,
            vertex_count: 2,
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1 }],
            relations: vec![],
            cutoff: 2,
            label: "A2".into(),
        }
    }

    #[test]
    fn product_of_fields_validates() {
        assert!(gf2xgf2().validate().passed());
    }

    #[test]
    fn broken_associativity_names_a_triple() {
        // basis 1, x, y with x·x = y, y·x = 1, x·y = 0: (xx)x != x(xx)
        let a = Algebra::from_structure_constants(
            "broken",
            2,
            3,
            &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (1, 0, 1, 1), (2, 0, 2, 1), (1, 1, 2, 1), (2, 1, 0, 1)],
            &[1, 0, 0],
        )
        .unwrap();
        let report = a.validate();
        assert!(report.unital);
        assert!(!report.associative);
        assert!(report.first_associativity_violation.is_some());
        assert!(a.validated().is_err());
    }

    #[test]
    fn group_algebra_c3_validates() {
        let a = from_group_table(&cyclic_group_table(3), 3).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.validate().passed());
        assert!(a.is_commutative());
        let trivial = from_group_table(&[vec![0]], 2).unwrap();
        assert_eq!(trivial.dim(), 1);
        assert!(trivial.validate().passed());
    }

    #[test]
    fn non_group_tables_rejected() {
        assert!(from_group_table(&[vec![0, 1], vec![1, 1]], 2).is_err());
        assert!(from_group_table(&[vec![0, 1], vec![0, 1]], 2).is_err());
        assert!(from_group_table(&[vec![0, 2], vec![1, 0]], 2).is_err());
        // Latin square without associativity: the loop of order 5 below.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(from_group_table(&loop5, 2).is_err());
    }

    #[test]
    fn single_vertex_quiver_is_the_field() {
        let q = QuiverWithRelations {
            p: 5,
            vertex_count: 1,
            arrows: vec![],
            relations: vec![],
            cutoff: 3,
            label: String::new(),
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.same_structure(&prime_field(5).unwrap()));
    }

    #[test]
    fn a2_path_algebra_is_upper_triangular() {
        let a = from_quiver(&a2(2)).unwrap();
        assert_eq!(a.basis_names(), &["e1", "e2", "a"]);
        let u = upper_triangular(2, &prime_field(2).unwrap()).unwrap();
        assert_eq!(u.basis_names(), &["e11", "e12", "e22"]);
        // e1 ↔ e11, e2 ↔ e22, a ↔ e12
        let perm = [0usize, 2, 1];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(a.constant(i, j, k), u.constant(perm[i], perm[j], perm[k]));
                }
            }
        }
        assert_eq!(a.unit(), &[1, 1, 0]);
        assert!(a.validate().passed());
    }

    #[test]
    fn loop_with_square_relation() {
        let q = QuiverWithRelations {
            p: 3,
            vertex_count: 1,
            arrows: vec![Arrow { name: "x".into(), source: 0, target: 0 }],
            relations: vec![vec![RelationTerm { coeff: 1, path: vec!["x".into(), "x".into()] }]],
            cutoff: 4,
            label: "k[x]/x^2".into(),
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 2);
        let x = a.basis_vector(1);
        assert_eq!(a.multiply(&x, &x), vec![0, 0]);
        assert!(a.same_structure(&truncated_polynomial(3, 2).unwrap()));
    }

    #[test]
    fn relation_errors() {
        let mut q = a2(2);
        q.relations = vec![vec![RelationTerm { coeff: 1, path: vec!["b".into()] }]];
        assert!(matches!(from_quiver(&q), Err(Error::InvalidAlgebra(_))));

        let mut q = a2(2);
        q.arrows.push(Arrow { name: "x".into(), source: 0, target: 0 });
        q.cutoff = 3;
        q.relations = vec![vec![
            RelationTerm { coeff: 1, path: vec!["a".into()] },
            RelationTerm { coeff: 1, path: vec!["x".into()] },
        ]];
        assert!(matches!(from_quiver(&q), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn commutative_relation_identifies_paths() {
        // Two loops x, y with xy = yx, cutoff 3: basis 1, x, y, xx, xy, yy.
        let q = QuiverWithRelations {
            p: 2,
            vertex_count: 1,
            arrows: vec![
                Arrow { name: "x".into(), source: 0, target: 0 },
                Arrow { name: "y".into(), source: 0, target: 0 },
            ],
            relations: vec![vec![
                RelationTerm { coeff: 1, path: vec!["x".into(), "y".into()] },
                RelationTerm { coeff: 1, path: vec!["y".into(), "x".into()] },
            ]],
            cutoff: 3,
            label: String::new(),
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(a.is_commutative());
        assert!(a.validate().passed());
    }

    #[test]
    fn matrix_constructions() {
        let f2 = prime_field(2).unwrap();
        assert!(upper_triangular(1, &f2).unwrap().same_structure(&f2));
        assert!(matrix_algebra(1, &f2).unwrap().same_structure(&f2));
        let m2 = matrix_algebra(2, &f2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert!(m2.validate().passed());
        assert!(!m2.is_commutative());
        let kx2 = truncated_polynomial(2, 2).unwrap();
        let u2 = upper_triangular(2, &kx2).unwrap();
        assert_eq!(u2.dim(), 6);
        assert!(u2.validate().passed());
        let m2l = matrix_algebra(2, &kx2).unwrap();
        assert_eq!(m2l.dim(), 8);
        assert!(m2l.validate().passed());
        let prod = direct_product(&f2, &kx2).unwrap();
        assert_eq!(prod.dim(), 3);
        assert!(prod.validate().passed());
        assert!(direct_product(&f2, &prime_field(3).unwrap()).is_err());
    }
}
