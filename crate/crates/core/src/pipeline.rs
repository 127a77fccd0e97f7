//! Per-orbit assembly of the abelianization and the verification battery.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::commutant::{
    classify_ml, compute_commutant, schur_split_oracle, verify_with, AlgebraStructure,
    ClassifyOptions, MatrixAlgebra, OracleOptions, SchurType,
};
use crate::error::{Error, Result};
use crate::exactlin::QMatrix;
use crate::liealg::{isotropy_summand, IsotropyData, LieSummand};
use crate::strata::{
    kernel_s_with, quotient_abelianization, Exactness, InvariantOptions, KernelResult,
    DEFAULT_MONOMIAL_CAP,
};
use crate::symmetry::{GroupAction, DEFAULT_GROUP_CAP};

/// Degree bound used for connected groups when none is given.
pub const DEFAULT_CONNECTED_DEGREE: u32 = 2;

/// One isolated orbit: its slice representation and optional Lie data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitModel {
    pub label: String,
    pub slice_action: GroupAction,
    pub isotropy_lie: Option<IsotropyData>,
    pub quotient_requested: bool,
}

impl OrbitModel {
    /// Rejects slice actions with a nonzero fixed vector.
    pub fn new(
        label: impl Into<String>,
        slice_action: GroupAction,
        isotropy_lie: Option<IsotropyData>,
        quotient_requested: bool,
    ) -> Result<Self> {
        let label = label.into();
        if let Some(v) = slice_action.fixed_vectors().basis().first() {
            return Err(Error::FixedVector { vector: v.clone() }.in_orbit(&label));
        }
        Ok(Self {
            label,
            slice_action,
            isotropy_lie,
            quotient_requested,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Invariant degree bound; defaults to `|G|` for finite groups.
    pub degree_bound: Option<u32>,
    pub seed: u64,
    pub group_cap: usize,
    pub monomial_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            degree_bound: None,
            seed: 0,
            group_cap: DEFAULT_GROUP_CAP,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
        }
    }
}

impl PipelineOptions {
    fn invariant_options(&self) -> InvariantOptions {
        InvariantOptions {
            monomial_cap: self.monomial_cap,
            group_cap: self.group_cap,
        }
    }

    fn degree_for(&self, action: &GroupAction) -> Result<u32> {
        if let Some(d) = self.degree_bound {
            return Ok(d);
        }
        Ok(match action {
            GroupAction::Finite(g) => {
                let order = g.enumerate(self.group_cap)?.len();
                u32::try_from(order).unwrap_or(u32::MAX)
            }
            GroupAction::Torus(_) => 1,
            GroupAction::Connected(_) => DEFAULT_CONNECTED_DEGREE,
        })
    }
}

/// The summand `Z/𝔰` for one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSummand {
    pub degree_bound: u32,
    pub dim_t: usize,
    pub dim_s: usize,
    pub exactness: Exactness,
    pub dim: usize,
    pub real_rank: usize,
    pub complex_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub label: String,
    pub slice_dim: usize,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub commutator_dim: usize,
    pub abelianization_dim: usize,
    pub m: usize,
    pub l: usize,
    /// Center of the commutant as operators on the slice.
    pub center_basis: Vec<QMatrix>,
    pub split_verified: bool,
    pub lie: Option<LieSummand>,
    pub quotient: Option<QuotientSummand>,
}

/// `R^a ⊕ C^b ⊕ (Lie summands)`, and the orbit-space totals when requested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Totals {
    pub real_rank: usize,
    pub complex_rank: usize,
    pub lie_dim: usize,
    pub quotient_real_rank: usize,
    pub quotient_complex_rank: usize,
}

impl Totals {
    pub fn add(&mut self, other: &Totals) {
        self.real_rank += other.real_rank;
        self.complex_rank += other.complex_rank;
        self.lie_dim += other.lie_dim;
        self.quotient_real_rank += other.quotient_real_rank;
        self.quotient_complex_rank += other.quotient_complex_rank;
    }
}

impl OrbitReport {
    pub fn totals(&self) -> Totals {
        let (qr, qc) = self
            .quotient
            .as_ref()
            .map_or((0, 0), |q| (q.real_rank, q.complex_rank));
        Totals {
            real_rank: self.m - self.l,
            complex_rank: self.l,
            lie_dim: self.lie.map_or(0, |s| s.abelianization_dim),
            quotient_real_rank: qr,
            quotient_complex_rank: qc,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbelianizationReport {
    pub orbits: Vec<OrbitReport>,
    pub totals: Totals,
}

impl AbelianizationReport {
    pub fn from_orbits(orbits: Vec<OrbitReport>) -> Self {
        let mut totals = Totals::default();
        for o in &orbits {
            totals.add(&o.totals());
        }
        Self { orbits, totals }
    }
}

struct OrbitWork {
    algebra: MatrixAlgebra,
    structure: AlgebraStructure,
    report: OrbitReport,
    kernel: Option<KernelResult>,
}

fn run_orbit(model: &OrbitModel, opts: &PipelineOptions) -> Result<OrbitWork> {
    let action = &model.slice_action;
    let algebra = compute_commutant(action)?;
    let structure = AlgebraStructure::new(&algebra);
    let check = verify_with(&structure);
    let split_verified = check.passed();
    let ml = classify_ml(
        &algebra,
        ClassifyOptions {
            seed: opts.seed,
            ..ClassifyOptions::default()
        },
    )?;
    let center_basis: Vec<QMatrix> = structure
        .center
        .basis()
        .iter()
        .map(|c| algebra.element(c))
        .collect();
    let lie = model.isotropy_lie.as_ref().map(isotropy_summand).transpose()?;

    let mut kernel = None;
    let quotient = if model.quotient_requested {
        let d = opts.degree_for(action)?;
        let k = kernel_s_with(action, &center_basis, &ml, d, &opts.invariant_options())?;
        let r = quotient_abelianization(center_basis.len(), &k, &ml, k.dim_s)?;
        let summand = QuotientSummand {
            degree_bound: d,
            dim_t: k.dim_t,
            dim_s: k.dim_s,
            exactness: k.exactness,
            dim: r.dim,
            real_rank: r.real_rank,
            complex_rank: r.complex_rank,
        };
        kernel = Some(k);
        Some(summand)
    } else {
        None
    };

    let report = OrbitReport {
        label: model.label.clone(),
        slice_dim: action.dim(),
        algebra_dim: algebra.dim(),
        center_dim: check.center.dim(),
        commutator_dim: check.commutator.dim(),
        abelianization_dim: algebra.dim() - check.commutator.dim(),
        m: ml.m,
        l: ml.l,
        center_basis,
        split_verified,
        lie,
        quotient,
    };
    Ok(OrbitWork {
        algebra,
        structure,
        report,
        kernel,
    })
}

/// Runs every orbit and sums the results. Errors carry the orbit label.
pub fn run_pipeline(models: &[OrbitModel], opts: &PipelineOptions) -> Result<AbelianizationReport> {
    let orbits = models
        .iter()
        .map(|m| {
            run_orbit(m, opts)
                .map(|w| w.report)
                .map_err(|e| e.in_orbit(&m.label))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianizationReport::from_orbits(orbits))
}

/// One pass/fail line of the verification battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub subject: String,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, subject: &str, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            subject: subject.into(),
            name,
            passed,
            detail,
        });
    }
}

/// Runs the verification battery on every orbit.
pub fn verify_mode(models: &[OrbitModel], opts: &PipelineOptions) -> VerificationReport {
    verify_mode_with(models, opts, &[])
}

/// As [`verify_mode`], additionally checking the center/commutator split of
/// each extra algebra.
pub fn verify_mode_with(
    models: &[OrbitModel],
    opts: &PipelineOptions,
    extra: &[(String, MatrixAlgebra)],
) -> VerificationReport {
    let mut out = VerificationReport::default();
    for model in models {
        verify_orbit(model, opts, &mut out);
    }
    for (label, a) in extra {
        let check = verify_with(&AlgebraStructure::new(a));
        let detail = check.failure().map_or_else(String::new, |f| f.to_string());
        out.push(label, "center-commutator split", check.passed(), detail);
    }
    out
}

fn verify_orbit(model: &OrbitModel, opts: &PipelineOptions, out: &mut VerificationReport) {
    let label = model.label.as_str();
    let work = match run_orbit(model, opts) {
        Ok(w) => w,
        Err(e) => {
            out.push(label, "pipeline", false, e.to_string());
            return;
        }
    };
    let r = &work.report;
    let check = verify_with(&work.structure);
    let detail = check.failure().map_or_else(String::new, |f| f.to_string());
    out.push(label, "center-commutator split", check.passed(), detail);

    let consistent = r.center_dim == r.m + r.l && r.abelianization_dim == r.center_dim;
    out.push(
        label,
        "center = m + l = abelianization",
        consistent,
        format!(
            "center {}, m + l = {}, abelianization {}",
            r.center_dim,
            r.m + r.l,
            r.abelianization_dim
        ),
    );

    if let GroupAction::Finite(g) = &model.slice_action {
        let oracle = g.enumerate(opts.group_cap).and_then(|els| {
            schur_split_oracle(
                &els,
                OracleOptions {
                    seed: opts.seed,
                    ..OracleOptions::default()
                },
            )
        });
        match oracle {
            Ok(blocks) => {
                let m = blocks.len();
                let l = blocks
                    .iter()
                    .filter(|b| b.schur_type == SchurType::Complex)
                    .count();
                let dim: usize = blocks
                    .iter()
                    .map(|b| b.multiplicity * b.multiplicity * b.schur_type.dim())
                    .sum();
                out.push(
                    label,
                    "numerical decomposition agrees",
                    (m, l) == (r.m, r.l) && dim == work.algebra.dim(),
                    format!("oracle (m, l) = ({m}, {l}), exact ({}, {})", r.m, r.l),
                );
            }
            Err(e) => out.push(label, "numerical decomposition agrees", false, e.to_string()),
        }
    }

    if let (Some(k), Some(q)) = (&work.kernel, &r.quotient) {
        let ml = crate::commutant::MLClassification {
            m: r.m,
            l: r.l,
            center_dim: r.center_dim,
            abelianization_dim: r.abelianization_dim,
            schur_types: None,
        };
        let next = kernel_s_with(
            &model.slice_action,
            &r.center_basis,
            &ml,
            q.degree_bound.saturating_add(1),
            &opts.invariant_options(),
        );
        match next {
            Ok(n) => out.push(
                label,
                "kernel shrinks with degree",
                k.s_basis.contains_subspace(&n.s_basis),
                format!("dim 𝔰: {} then {}", k.dim_s, n.dim_s),
            ),
            Err(e) => out.push(label, "kernel shrinks with degree", false, e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;
    use crate::symmetry::FiniteGroup;

    fn c3(label: &str, quotient: bool) -> OrbitModel {
        let g = QMatrix::from_i64(&[[0, -1], [1, -1]]);
        let act = GroupAction::Finite(FiniteGroup::new(2, alloc::vec![g]).unwrap());
        OrbitModel::new(label, act, None, quotient).unwrap()
    }

    #[test]
    fn single_c3_orbit() {
        let r = run_pipeline(&[c3("a", true)], &PipelineOptions::default()).unwrap();
        assert_eq!((r.totals.real_rank, r.totals.complex_rank), (0, 1));
        let qs = r.orbits[0].quotient.as_ref().unwrap();
        assert_eq!((qs.dim_s, qs.complex_rank), (0, 1));
        assert_eq!(qs.exactness, Exactness::Certified);
    }

    #[test]
    fn two_orbits_add() {
        let r = run_pipeline(&[c3("a", false), c3("b", false)], &PipelineOptions::default())
            .unwrap();
        assert_eq!(r.totals.complex_rank, 2);
        assert_eq!(r.totals.real_rank, 0);
    }

    #[test]
    fn rejects_fixed_vectors() {
        let act = GroupAction::Finite(
            FiniteGroup::new(2, alloc::vec![QMatrix::from_i64(&[[1, 0], [0, -1]])]).unwrap(),
        );
        let err = OrbitModel::new("bad", act, None, false).unwrap_err();
        let Error::Orbit { source, .. } = err else { panic!() };
        assert_eq!(
            *source,
            Error::FixedVector {
                vector: alloc::vec![q(1), q(0)]
            }
        );
    }

    #[test]
    fn verify_passes_on_c3() {
        let v = verify_mode(&[c3("a", true)], &PipelineOptions::default());
        assert!(v.all_passed(), "{:?}", v.checks);
        assert_eq!(v.checks.len(), 4);
    }
}
