//! Checks of the converse of Schur's lemma on modules of finite length.
//!
//! The central fact verified here: modules of finite length over an algebra
//! satisfy "division endomorphism ring implies simple" exactly when the
//! Gabriel quiver has no arrows between distinct vertices. When it does
//! have such an arrow, a non-split extension of two nonisomorphic simples
//! is a counterexample; when it does not, every non-simple module carries
//! either a nontrivial idempotent or a nonzero square-zero endomorphism.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{radical_ideal, Algebra, Radical};
use crate::error::{Error, Guard, Result};
use crate::ext::{
    ext_space, quiver_from_inventory, simple_inventory, Cocycle, GabrielQuiver, SimpleInventory, FORMAT_VERSION,
};
use crate::linalg::{field_power, EchelonBasis, Matrix, VectorIter};
use crate::module::{
    are_isomorphic, decompose_indecomposable, end_algebra, end_realization, hom_space, is_simple, iso_invariant,
    minimal_submodule, radical_and_socle, regular_module, restrict, sub_quotient, EndRealization, IsoInvariant,
    RightModule, Summand,
};

/// Everything computed once per algebra: simples, quiver and radical.
#[derive(Clone, Debug)]
pub struct AlgebraAnalysis {
    pub algebra: Arc<Algebra>,
    pub quiver: GabrielQuiver,
    pub radical: Radical,
    pub guard: Guard,
}

impl AlgebraAnalysis {
    pub fn new(algebra: Arc<Algebra>, guard: Guard) -> Result<Self> {
        let inventory = simple_inventory(&algebra, guard)?;
        let radical = radical_ideal(&algebra, &inventory)?;
        let quiver = quiver_from_inventory(inventory)?;
        Ok(AlgebraAnalysis { algebra, quiver, radical, guard })
    }

    pub fn inventory(&self) -> &SimpleInventory {
        &self.quiver.inventory
    }

    fn require_own(&self, m: &RightModule) -> Result<()> {
        if Arc::ptr_eq(m.algebra(), &self.algebra) || m.algebra().same_structure(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Composition multiplicities of `m` indexed by the simple inventory.
    pub fn profile(&self, m: &RightModule) -> Result<Vec<usize>> {
        self.inventory().profile(m, self.guard)
    }

    pub fn is_isotypic(&self, m: &RightModule) -> Result<bool> {
        Ok(self.profile(m)?.iter().filter(|&&c| c > 0).count() <= 1)
    }
}

fn rows(m: &Matrix) -> Vec<Vec<u8>> {
    m.row_vecs()
}

#[derive(Clone, Debug)]
pub struct DivisionVerdict {
    pub is_division: bool,
    /// Number of ring elements enumerated, `p^dim`.
    pub card: u64,
    /// A nonzero element with singular matrix, when not a division ring.
    pub witness: Option<Matrix>,
    pub commutative: bool,
}

/// Decides whether the endomorphism ring is a division ring: a finite ring
/// is one exactly when every nonzero element is invertible. Basis elements
/// are tried first, then all elements in order; the guard only bounds the
/// search when no zero divisor turns up.
pub fn division_test(e: &EndRealization, guard: Guard) -> Result<DivisionVerdict> {
    let p = e.module.p();
    let card = field_power(p, e.dim());
    let commutative = e.basis.iter().all(|x| e.basis.iter().all(|y| x.mul(y) == y.mul(x)));
    let mut witness = e.basis.iter().find(|x| !x.is_invertible()).cloned();
    if witness.is_none() {
        for (count, c) in VectorIter::new(p, e.dim()).enumerate().skip(1) {
            if count as u64 >= guard.0 {
                guard.check("division_test", p, e.dim())?;
            }
            let x = e.element(&c);
            if !x.is_invertible() {
                witness = Some(x);
                break;
            }
        }
    }
    Ok(DivisionVerdict { is_division: witness.is_none() && e.dim() > 0, card, witness, commutative })
}

/// Whether the non-invertible elements form an additive subgroup, which
/// for a finite ring is the same as being local.
pub fn is_local(e: &EndRealization, guard: Guard) -> Result<bool> {
    let p = e.module.p();
    guard.check("local test", p, e.dim())?;
    let mut nonunits = 0u64;
    let mut span = EchelonBasis::new(p, e.dim());
    for c in VectorIter::new(p, e.dim()) {
        if !e.element(&c).is_invertible() {
            nonunits += 1;
            span.insert(&c);
        }
    }
    Ok(nonunits == field_power(p, span.dim()))
}

/// A non-split extension of two nonisomorphic simples whose endomorphism
/// ring is nevertheless a division ring, with the embeddings of its
/// endomorphism ring into those of the two simples.
#[derive(Clone, Debug)]
pub struct CslWitness {
    /// `(i, j)`: the module is an extension `0 → S_j → M → S_i → 0`.
    pub arrow: (usize, usize),
    pub cocycle: Cocycle,
    pub module: RightModule,
    pub split: bool,
    pub end_dim: usize,
    pub top_end_dim: usize,
    pub bottom_end_dim: usize,
    pub end_is_division: bool,
    pub is_simple: bool,
    pub length: usize,
    /// `End(M) → End(S_i)` from the induced map on the quotient.
    pub top_map: Vec<Matrix>,
    /// `End(M) → End(S_j)` from the restriction to the submodule.
    pub bottom_map: Vec<Matrix>,
    pub top_map_injective: bool,
    pub bottom_map_injective: bool,
    pub maps_multiplicative: bool,
}

impl CslWitness {
    /// All conclusions about the witness hold.
    pub fn verified(&self) -> bool {
        self.end_is_division
            && !self.is_simple
            && !self.split
            && self.length == 2
            && self.end_dim <= self.top_end_dim.min(self.bottom_end_dim)
            && self.top_map_injective
            && self.bottom_map_injective
            && self.maps_multiplicative
    }

    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            arrow: [format!("S{}", self.arrow.0 + 1), format!("S{}", self.arrow.1 + 1)],
            module: module_summary(&self.module, self.length, Vec::new(), self.end_dim, true),
            split: self.split,
            end_dim: self.end_dim,
            top_end_dim: self.top_end_dim,
            bottom_end_dim: self.bottom_end_dim,
            end_is_division: self.end_is_division,
            is_simple: self.is_simple,
            length: self.length,
            top_map_injective: self.top_map_injective,
            bottom_map_injective: self.bottom_map_injective,
            maps_multiplicative: self.maps_multiplicative,
            verified: self.verified(),
        }
    }
}

fn independent(mats: &[Matrix]) -> bool {
    let Some(first) = mats.first() else { return true };
    let flat: Vec<Vec<u8>> = mats.iter().map(|m| m.flatten()).collect();
    Matrix::from_row_slices(first.p(), first.rows() * first.cols(), &flat).rank() == mats.len()
}

/// Builds and checks the counterexample attached to the first arrow between
/// distinct vertices, if there is one.
pub fn csl_witness(an: &AlgebraAnalysis) -> Result<Option<CslWitness>> {
    let Some((i, j)) = an.quiver.first_proper_arrow() else {
        return Ok(None);
    };
    let guard = an.guard;
    let top = an.inventory().get(i);
    let bottom = an.inventory().get(j);
    let space = ext_space(top, bottom)?;
    if space.ext_dim == 0 {
        return Err(Error::TheoremViolation("arrow without extension classes".into()));
    }
    let cocycle = space.cocycle_from_flat(space.class_basis.row(0));
    let ext = space.extension(&cocycle)?;
    let m = ext.module;
    let (s, t) = (top.dim(), bottom.dim());
    let end = end_realization(&m)?;
    let verdict = division_test(&end, guard)?;
    let mut top_map = Vec::with_capacity(end.dim());
    let mut bottom_map = Vec::with_capacity(end.dim());
    let mut preserves_bottom = true;
    for f in &end.basis {
        preserves_bottom &= f.block(s, 0, t, s).is_zero();
        top_map.push(f.block(0, 0, s, s));
        bottom_map.push(f.block(s, s, t, t));
    }
    let intertwines = |module: &RightModule, x: &Matrix| module.actions().iter().all(|a| a.mul(x) == x.mul(a));
    let mut multiplicative = preserves_bottom
        && top_map.iter().all(|x| intertwines(top, x))
        && bottom_map.iter().all(|x| intertwines(bottom, x));
    for (a, f) in end.basis.iter().enumerate() {
        for (b, g) in end.basis.iter().enumerate() {
            let fg = f.mul(g);
            multiplicative &= fg.block(0, 0, s, s) == top_map[a].mul(&top_map[b]);
            multiplicative &= fg.block(s, s, t, t) == bottom_map[a].mul(&bottom_map[b]);
        }
    }
    let length = crate::module::length(&m, guard)?;
    Ok(Some(CslWitness {
        arrow: (i, j),
        cocycle,
        split: ext.split,
        end_dim: end.dim(),
        top_end_dim: an.inventory().simples[i].end_dim,
        bottom_end_dim: an.inventory().simples[j].end_dim,
        end_is_division: verdict.is_division,
        is_simple: is_simple(&m, guard)?,
        length,
        top_map_injective: independent(&top_map),
        bottom_map_injective: independent(&bottom_map),
        top_map,
        bottom_map,
        maps_multiplicative: multiplicative,
        module: m,
    }))
}

/// Modules of length `1..=max_length` up to isomorphism, by layers.
#[derive(Clone, Debug)]
pub struct ModuleEnumeration {
    /// `layers[l]` holds the modules of length `l + 1`.
    pub layers: Vec<Vec<RightModule>>,
    /// Largest length through which the enumeration is exhaustive.
    pub complete_through: usize,
    /// Why enumeration stopped early, if it did.
    pub limit: Option<String>,
}

impl ModuleEnumeration {
    pub fn modules(&self) -> impl Iterator<Item = (usize, &RightModule)> {
        self.layers.iter().enumerate().flat_map(|(l, layer)| layer.iter().map(move |m| (l + 1, m)))
    }

    pub fn count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

fn next_layer(an: &AlgebraAnalysis, previous: &[RightModule]) -> Result<Vec<RightModule>> {
    let guard = an.guard;
    let mut found: Vec<(IsoInvariant, RightModule)> = Vec::new();
    for n in previous {
        for s in an.inventory().modules() {
            let space = ext_space(s, n)?;
            for c in space.class_representatives(guard)? {
                let e = space.extension(&c)?.module;
                let key = iso_invariant(&e)?;
                let mut duplicate = false;
                for (k, other) in &found {
                    if *k == key && are_isomorphic(other, &e, guard)?.is_some() {
                        duplicate = true;
                        break;
                    }
                }
                if !duplicate {
                    found.push((key, e));
                }
            }
        }
    }
    let mut layer: Vec<RightModule> = found.into_iter().map(|(_, m)| m).collect();
    layer.sort_by_key(|m| m.canonical_key());
    Ok(layer)
}

/// Every module of length at most `max_length`, up to isomorphism: a module
/// of length `l + 1` is an extension of a simple by a submodule of length `l`.
pub fn enumerate_modules(an: &AlgebraAnalysis, max_length: usize) -> Result<ModuleEnumeration> {
    if max_length == 0 {
        return Err(Error::InvalidInput("max_length must be at least 1".into()));
    }
    let mut layers = vec![an.inventory().modules().cloned().collect::<Vec<_>>()];
    let mut limit = None;
    while layers.len() < max_length {
        match next_layer(an, layers.last().unwrap()) {
            Ok(layer) => layers.push(layer),
            Err(e) if e.is_guard() => {
                limit = Some(format!("length {}: {e}", layers.len() + 1));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ModuleEnumeration { complete_through: layers.len(), layers, limit })
}

/// An isotypic component: the sum of the indecomposable summands whose
/// composition factors are all isomorphic to inventory simple `class`.
#[derive(Clone, Debug)]
pub struct IsotypicGroup {
    pub class: usize,
    pub summand_dims: Vec<usize>,
    /// Rows: basis of the component in ambient coordinates.
    pub basis: Matrix,
}

impl IsotypicGroup {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub indecomposables: Vec<(Summand, usize)>,
    pub groups: Vec<IsotypicGroup>,
    /// Rows: the group bases stacked in group order.
    pub certificate: Matrix,
}

/// Splits a module over an algebra with totally disconnected quiver into
/// isotypic components. An indecomposable summand that is not isotypic
/// would contradict the theory and is reported as a violation.
pub fn isotypic_decomposition(an: &AlgebraAnalysis, m: &RightModule) -> Result<IsotypicDecomposition> {
    an.require_own(m)?;
    if !an.quiver.disconnected {
        return Err(Error::Precondition(
            "isotypic decomposition requires a totally disconnected Gabriel quiver".into(),
        ));
    }
    let p = m.p();
    let d = decompose_indecomposable(m, an.guard)?;
    let mut indecomposables = Vec::with_capacity(d.summands.len());
    for s in d.summands {
        let profile = an.profile(&s.module)?;
        let classes: Vec<usize> = (0..profile.len()).filter(|&i| profile[i] > 0).collect();
        if classes.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "indecomposable summand of dimension {} has {} composition classes",
                s.module.dim(),
                classes.len()
            )));
        }
        indecomposables.push((s, classes[0]));
    }
    let mut groups: Vec<IsotypicGroup> = Vec::new();
    for class in 0..an.inventory().len() {
        let members: Vec<&Summand> = indecomposables.iter().filter(|(_, c)| *c == class).map(|(s, _)| s).collect();
        if members.is_empty() {
            continue;
        }
        let mut basis = Matrix::zeros(p, 0, m.dim());
        for s in &members {
            basis = basis.vstack(&s.basis);
        }
        groups.push(IsotypicGroup { class, summand_dims: members.iter().map(|s| s.module.dim()).collect(), basis });
    }
    let mut certificate = Matrix::zeros(p, 0, m.dim());
    for g in &groups {
        certificate = certificate.vstack(&g.basis);
    }
    Ok(IsotypicDecomposition { indecomposables, groups, certificate })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilpotentBranch {
    /// Through a simple direct summand and an isomorphic simple submodule
    /// of its complement.
    SimpleSummand,
    /// `M → M/rad M → soc M → M`, using `soc M ⊆ rad M`.
    SocleIntoRadical,
}

#[derive(Clone, Debug)]
pub struct NilpotentEndomorphism {
    pub matrix: Matrix,
    pub branch: NilpotentBranch,
}

/// A nonzero endomorphism with square zero of a nonzero, non-simple,
/// isotypic module.
pub fn nilpotent_endomorphism(an: &AlgebraAnalysis, m: &RightModule) -> Result<NilpotentEndomorphism> {
    an.require_own(m)?;
    let guard = an.guard;
    if m.dim() == 0 {
        return Err(Error::Precondition("nilpotent endomorphism of the zero module".into()));
    }
    if !an.is_isotypic(m)? {
        return Err(Error::Precondition("module is not isotypic".into()));
    }
    if is_simple(m, guard)? {
        return Err(Error::Precondition("module is simple".into()));
    }
    let p = m.p();
    let d = decompose_indecomposable(m, guard)?;
    let f = if d.summands.len() > 1 && d.summands.iter().any(|s| is_simple(&s.module, guard).unwrap_or(false)) {
        let si = d.summands.iter().position(|s| is_simple(&s.module, guard).unwrap_or(false)).unwrap();
        let offset: usize = d.summands[..si].iter().map(|s| s.module.dim()).sum();
        let simple = &d.summands[si];
        let sdim = simple.module.dim();
        let mut complement = Matrix::zeros(p, 0, m.dim());
        for (k, s) in d.summands.iter().enumerate() {
            if k != si {
                complement = complement.vstack(&s.basis);
            }
        }
        let rest = restrict(m, &complement)?;
        let t_in_rest = minimal_submodule(&rest, guard)?;
        let t = restrict(&rest, &t_in_rest)?;
        let phi = are_isomorphic(&simple.module, &t, guard)?
            .ok_or_else(|| Error::TheoremViolation("simple submodules of an isotypic module differ".into()))?;
        let inv = d.certificate.inverse().expect("decomposition certificate is invertible");
        let project = inv.block(0, offset, m.dim(), sdim);
        let include = t_in_rest.mul(&complement);
        NilpotentEndomorphism { matrix: project.mul(&phi).mul(&include), branch: NilpotentBranch::SimpleSummand }
    } else {
        let (rad, soc) = radical_and_socle(m, &an.radical)?;
        if !rad.row_space_contains(&soc) {
            return Err(Error::TheoremViolation("socle not contained in radical without simple summands".into()));
        }
        let top = sub_quotient(m, &rad)?;
        let socle = restrict(m, &soc)?;
        let hom = hom_space(&top.quotient, &socle)?;
        let f0 = hom.basis.first().ok_or_else(|| Error::TheoremViolation("no map from the top to the socle".into()))?;
        NilpotentEndomorphism { matrix: top.projection.mul(f0).mul(&soc), branch: NilpotentBranch::SocleIntoRadical }
    };
    let x = &f.matrix;
    let intertwines = m.actions().iter().all(|a| a.mul(x) == x.mul(a));
    if x.is_zero() || !x.mul(x).is_zero() || !intertwines {
        return Err(Error::TheoremViolation("constructed endomorphism is not a nonzero square-zero map".into()));
    }
    Ok(f)
}

/// `(has a simple direct summand, soc M ⊆ rad M)`; for nonzero modules the
/// two never hold together and never fail together.
pub fn socle_radical_check(an: &AlgebraAnalysis, m: &RightModule) -> Result<(bool, bool)> {
    let d = decompose_indecomposable(m, an.guard)?;
    let mut has_simple = false;
    for s in &d.summands {
        if is_simple(&s.module, an.guard)? {
            has_simple = true;
            break;
        }
    }
    let (rad, soc) = radical_and_socle(m, &an.radical)?;
    Ok((has_simple, rad.row_space_contains(&soc)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub dim: usize,
    pub length: usize,
    pub factor_profile: Vec<usize>,
    pub end_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<u8>>>>,
}

fn module_summary(
    m: &RightModule,
    length: usize,
    profile: Vec<usize>,
    end_dim: usize,
    with_action: bool,
) -> ModuleSummary {
    ModuleSummary {
        dim: m.dim(),
        length,
        factor_profile: profile,
        end_dim,
        action: with_action.then(|| m.actions().iter().map(rows).collect()),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Nontrivial direct sum decomposition into isotypic components.
    IsotypicDecomposition {
        summand_dims: Vec<usize>,
        component_dims: Vec<usize>,
    },
    NilpotentEndomorphism {
        branch: NilpotentBranch,
        endomorphism: Vec<Vec<u8>>,
    },
    /// A nonzero endomorphism that is not invertible.
    ZeroDivisor {
        endomorphism: Vec<Vec<u8>>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub length: usize,
    pub index: usize,
    pub dim: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub arrow: [String; 2],
    pub module: ModuleSummary,
    pub split: bool,
    pub end_dim: usize,
    pub top_end_dim: usize,
    pub bottom_end_dim: usize,
    pub end_is_division: bool,
    pub is_simple: bool,
    pub length: usize,
    pub top_map_injective: bool,
    pub bottom_map_injective: bool,
    pub maps_multiplicative: bool,
    pub verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Witness,
    Exhaustive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CslReport {
    pub format_version: u32,
    pub algebra_label: String,
    pub p: u32,
    pub algebra_dim: usize,
    pub disconnected: bool,
    pub mode: CheckMode,
    pub max_length: usize,
    /// Length through which the module enumeration is exhaustive; 0 when
    /// no enumeration was run.
    pub checked_up_to: usize,
    pub layer_sizes: Vec<usize>,
    pub modules_examined: usize,
    pub violations: Vec<ModuleSummary>,
    pub certificates: Vec<CertificateEntry>,
    pub witness: Option<WitnessReport>,
    pub limit: Option<String>,
    /// Whether the structure of the regular module agrees with the quiver;
    /// absent when a guard stopped the structure computation.
    pub structure_matches_quiver: Option<bool>,
    pub consistent: bool,
    pub conclusion: String,
}

impl CslReport {
    /// `0` consistent and complete, `2` consistent up to a guard limit,
    /// `1` inconsistent.
    pub fn exit_code(&self) -> i32 {
        if !self.consistent {
            1
        } else if self.limit.is_some() {
            2
        } else {
            0
        }
    }
}

/// Runs the check at lengths up to `max_length`. With a proper arrow the
/// witness settles the question and enumeration only runs when forced.
pub fn csl_check(an: &AlgebraAnalysis, max_length: usize, force_exhaustive: bool) -> Result<CslReport> {
    let guard = an.guard;
    let disconnected = an.quiver.disconnected;
    let witness = csl_witness(an)?;
    let run_enumeration = disconnected || force_exhaustive;
    let mut report = CslReport {
        format_version: FORMAT_VERSION,
        algebra_label: an.algebra.label().to_string(),
        p: an.algebra.p(),
        algebra_dim: an.algebra.dim(),
        disconnected,
        mode: if run_enumeration { CheckMode::Exhaustive } else { CheckMode::Witness },
        max_length,
        checked_up_to: 0,
        layer_sizes: Vec::new(),
        modules_examined: 0,
        violations: Vec::new(),
        certificates: Vec::new(),
        witness: witness.as_ref().map(CslWitness::report),
        limit: None,
        structure_matches_quiver: None,
        consistent: false,
        conclusion: String::new(),
    };
    if run_enumeration {
        let en = enumerate_modules(an, max_length)?;
        report.checked_up_to = en.complete_through;
        report.layer_sizes = en.layers.iter().map(Vec::len).collect();
        report.limit = en.limit.clone();
        for (l, layer) in en.layers.iter().enumerate() {
            for (idx, m) in layer.iter().enumerate() {
                let length = l + 1;
                report.modules_examined += 1;
                if length == 1 {
                    continue;
                }
                let end = end_realization(m)?;
                let verdict = division_test(&end, guard)?;
                if verdict.is_division {
                    report.violations.push(module_summary(m, length, an.profile(m)?, end.dim(), true));
                    continue;
                }
                let certificate = if disconnected {
                    let iso = isotypic_decomposition(an, m)?;
                    if iso.indecomposables.len() > 1 {
                        Certificate::IsotypicDecomposition {
                            summand_dims: iso.indecomposables.iter().map(|(s, _)| s.module.dim()).collect(),
                            component_dims: iso.groups.iter().map(IsotypicGroup::dim).collect(),
                        }
                    } else {
                        let f = nilpotent_endomorphism(an, m)?;
                        Certificate::NilpotentEndomorphism { branch: f.branch, endomorphism: rows(&f.matrix) }
                    }
                } else {
                    Certificate::ZeroDivisor {
                        endomorphism: rows(verdict.witness.as_ref().expect("non-division ring has a witness")),
                    }
                };
                report.certificates.push(CertificateEntry { length, index: idx, dim: m.dim(), certificate });
            }
        }
    }
    report.structure_matches_quiver = match semiprimary_structure(an) {
        Ok(s) => Some(s.matches_quiver),
        Err(e) if e.is_guard() => None,
        Err(e) => return Err(e),
    };
    let witness_ok = witness.as_ref().is_some_and(CslWitness::verified);
    report.consistent = if disconnected {
        witness.is_none() && report.violations.is_empty()
    } else {
        let enumeration_agrees =
            !run_enumeration || report.checked_up_to < 2 || report.violations.iter().any(|v| v.length == 2);
        witness_ok && enumeration_agrees
    } && report.structure_matches_quiver != Some(false);
    report.conclusion = if disconnected {
        if report.limit.is_some() {
            format!("FinLen has CSL (no violations through length {})", report.checked_up_to)
        } else {
            format!("FinLen has CSL (checked through length {max_length})")
        }
    } else {
        "FinLen does not have CSL (length-2 witness)".to_string()
    };
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureFactor {
    pub matrix_size: usize,
    pub local_dim: usize,
    pub local: bool,
    pub projective_dim: usize,
    pub local_structure_constants: Vec<[u32; 4]>,
    pub local_unit: Vec<u8>,
    pub multiplicity_evidence: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub format_version: u32,
    pub algebra_label: String,
    pub algebra_dim: usize,
    /// One entry per isomorphism class of indecomposable projective.
    pub factors: Vec<StructureFactor>,
    /// `cross_hom_dims[s][t] = dim Hom(P_s, P_t)`.
    pub cross_hom_dims: Vec<Vec<usize>>,
    /// Zero Homs between distinct classes and local endomorphism rings.
    pub decomposition_exists: bool,
    pub dimension_check: bool,
    pub quiver_disconnected: bool,
    pub matches_quiver: bool,
}

/// Writes `A ≅ End(A_A)` as a product of matrix rings over local rings when
/// possible, from the indecomposable summands of the regular module.
pub fn semiprimary_structure(an: &AlgebraAnalysis) -> Result<StructureReport> {
    let guard = an.guard;
    let a = &an.algebra;
    let reg = regular_module(a);
    let d = decompose_indecomposable(&reg, guard)?;
    let mut classes: Vec<(RightModule, usize)> = Vec::new();
    'summands: for s in d.summands {
        for (rep, count) in classes.iter_mut() {
            if are_isomorphic(rep, &s.module, guard)?.is_some() {
                *count += 1;
                continue 'summands;
            }
        }
        classes.push((s.module, 1));
    }
    let mut factors = Vec::with_capacity(classes.len());
    for (rep, count) in &classes {
        let (end, local_alg) = end_algebra(rep)?;
        let local = is_local(&end, guard)?;
        factors.push(StructureFactor {
            matrix_size: *count,
            local_dim: end.dim(),
            local,
            projective_dim: rep.dim(),
            local_structure_constants: local_alg
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| [i as u32, j as u32, k as u32, c])
                .collect(),
            local_unit: local_alg.unit().to_vec(),
            multiplicity_evidence: format!(
                "{count} isomorphic indecomposable summand(s) of dimension {} in the regular module",
                rep.dim()
            ),
        });
    }
    let k = classes.len();
    let mut cross = vec![vec![0; k]; k];
    for s in 0..k {
        for t in 0..k {
            cross[s][t] = hom_space(&classes[s].0, &classes[t].0)?.dim();
        }
    }
    let no_cross = (0..k).all(|s| (0..k).all(|t| s == t || cross[s][t] == 0));
    let decomposition_exists = no_cross && factors.iter().all(|f| f.local);
    let total: usize = factors.iter().map(|f| f.matrix_size * f.matrix_size * f.local_dim).sum();
    let dimension_check = !decomposition_exists || total == a.dim();
    Ok(StructureReport {
        format_version: FORMAT_VERSION,
        algebra_label: a.label().to_string(),
        algebra_dim: a.dim(),
        factors,
        cross_hom_dims: cross,
        decomposition_exists,
        dimension_check,
        quiver_disconnected: an.quiver.disconnected,
        matches_quiver: decomposition_exists == an.quiver.disconnected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        cyclic_group_table, direct_product, from_group_table, prime_field, truncated_polynomial, upper_triangular,
    };

    fn analyse(a: Algebra) -> AlgebraAnalysis {
        AlgebraAnalysis::new(Arc::new(a), Guard::default()).unwrap()
    }

    #[test]
    fn division_test_on_simple_and_double() {
        let an = analyse(prime_field(2).unwrap());
        let s = an.inventory().get(0).clone();
        let v = division_test(&end_realization(&s).unwrap(), an.guard).unwrap();
        assert!(v.is_division);
        assert_eq!(v.card, 2);
        let ss = s.direct_sum(&s).unwrap();
        let v = division_test(&end_realization(&ss).unwrap(), an.guard).unwrap();
        assert!(!v.is_division);
        let w = v.witness.unwrap();
        assert!(!w.is_zero() && !w.is_invertible());
        assert_eq!(v.card, 16);
    }

    #[test]
    fn gf4_inside_c3() {
        let an = analyse(from_group_table(&cyclic_group_table(3), 2).unwrap());
        let s = an.inventory().simples.iter().find(|s| s.module.dim() == 2).unwrap();
        let v = division_test(&end_realization(&s.module).unwrap(), an.guard).unwrap();
        assert!(v.is_division && v.commutative);
        assert_eq!(v.card, 4);
    }

    #[test]
    fn u2_witness() {
        let an = analyse(upper_triangular(2, &prime_field(2).unwrap()).unwrap());
        let w = csl_witness(&an).unwrap().unwrap();
        assert!(w.verified());
        assert_eq!(w.module.dim(), 2);
        assert_eq!(w.end_dim, 1);
    }

    #[test]
    fn no_witness_without_proper_arrows() {
        let f = prime_field(2).unwrap();
        assert!(csl_witness(&analyse(direct_product(&f, &f).unwrap())).unwrap().is_none());
        assert!(csl_witness(&analyse(from_group_table(&cyclic_group_table(3), 3).unwrap())).unwrap().is_none());
    }

    #[test]
    fn enumeration_counts() {
        let f = prime_field(2).unwrap();
        let en = enumerate_modules(&analyse(direct_product(&f, &f).unwrap()), 2).unwrap();
        assert_eq!(en.count(), 5);
        let en = enumerate_modules(&analyse(truncated_polynomial(3, 2).unwrap()), 2).unwrap();
        assert_eq!(en.count(), 3);
        let en = enumerate_modules(&analyse(upper_triangular(2, &f).unwrap()), 2).unwrap();
        assert_eq!(en.count(), 6);
    }

    #[test]
    fn nilpotent_on_dual_numbers_is_multiplication_by_x() {
        let a = Arc::new(truncated_polynomial(2, 2).unwrap());
        let an = AlgebraAnalysis::new(a.clone(), Guard::default()).unwrap();
        let r = regular_module(&a);
        let f = nilpotent_endomorphism(&an, &r).unwrap();
        assert_eq!(f.branch, NilpotentBranch::SocleIntoRadical);
        // left multiplication by x in basis 1, x
        assert_eq!(f.matrix, a.left_multiplication(&[0, 1]));
    }

    #[test]
    fn nilpotent_through_simple_summand() {
        let an = analyse(prime_field(3).unwrap());
        let s = an.inventory().get(0);
        let ss = s.direct_sum(s).unwrap();
        let f = nilpotent_endomorphism(&an, &ss).unwrap();
        assert_eq!(f.branch, NilpotentBranch::SimpleSummand);
        assert!(!f.matrix.is_zero());
    }

    #[test]
    fn nilpotent_preconditions() {
        let an = analyse(upper_triangular(2, &prime_field(2).unwrap()).unwrap());
        let s = an.inventory().get(0);
        assert!(matches!(nilpotent_endomorphism(&an, s), Err(Error::Precondition(_))));
        let mixed = an.inventory().get(0).direct_sum(an.inventory().get(1)).unwrap();
        assert!(matches!(nilpotent_endomorphism(&an, &mixed), Err(Error::Precondition(_))));
        assert!(matches!(isotypic_decomposition(&an, &mixed), Err(Error::Precondition(_))));
    }

    #[test]
    fn structure_of_small_algebras() {
        let f = prime_field(2).unwrap();
        let r = semiprimary_structure(&analyse(direct_product(&f, &f).unwrap())).unwrap();
        assert!(r.decomposition_exists && r.matches_quiver);
        assert_eq!(r.factors.len(), 2);
        let r = semiprimary_structure(&analyse(upper_triangular(2, &f).unwrap())).unwrap();
        assert!(!r.decomposition_exists && r.matches_quiver);
    }
}
