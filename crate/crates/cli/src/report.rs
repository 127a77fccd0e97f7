//! Text and JSON renderings of pipeline results.

use std::fmt::Write;

use equiab_core::pipeline::{AbelianizationReport, OrbitReport, Totals, VerificationReport};
use equiab_core::strata::Exactness;
use serde::{Deserialize, Serialize};

use crate::format::{MatrixDoc, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub orbits: Vec<OrbitDoc>,
    pub totals: TotalsDoc,
    /// Where each summand of the total comes from.
    pub summands: Vec<SummandDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub label: String,
    pub slice_dim: usize,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub commutator_dim: usize,
    pub abelianization_dim: usize,
    pub m: usize,
    pub l: usize,
    pub center_basis: Vec<MatrixDoc>,
    pub split_verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDoc {
    pub k_fixed_dim: usize,
    pub h_fixed_dim: usize,
    pub quotient_dim: usize,
    pub abelianization_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub degree_bound: u32,
    pub dim_t: usize,
    pub dim_s: usize,
    /// `"certified"` or `"degree-bounded"`.
    pub exactness: String,
    pub dim: usize,
    pub real_rank: usize,
    pub complex_rank: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalsDoc {
    pub real_rank: usize,
    pub complex_rank: usize,
    pub lie_dim: usize,
    pub quotient_real_rank: usize,
    pub quotient_complex_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub orbit: String,
    /// `"R"`, `"C"`, `"lie"`, `"quotient-R"` or `"quotient-C"`.
    pub kind: String,
    pub rank: usize,
}

fn exactness_str(e: Exactness) -> &'static str {
    match e {
        Exactness::Certified => "certified",
        Exactness::DegreeBounded => "degree-bounded",
    }
}

impl From<&Totals> for TotalsDoc {
    fn from(t: &Totals) -> Self {
        Self {
            real_rank: t.real_rank,
            complex_rank: t.complex_rank,
            lie_dim: t.lie_dim,
            quotient_real_rank: t.quotient_real_rank,
            quotient_complex_rank: t.quotient_complex_rank,
        }
    }
}

impl From<&OrbitReport> for OrbitDoc {
    fn from(r: &OrbitReport) -> Self {
        Self {
            label: r.label.clone(),
            slice_dim: r.slice_dim,
            algebra_dim: r.algebra_dim,
            center_dim: r.center_dim,
            commutator_dim: r.commutator_dim,
            abelianization_dim: r.abelianization_dim,
            m: r.m,
            l: r.l,
            center_basis: r
                .center_basis
                .iter()
                .map(|m| {
                    m.row_vecs()
                        .into_iter()
                        .map(|row| row.into_iter().map(Rational).collect())
                        .collect()
                })
                .collect(),
            split_verified: r.split_verified,
            lie: r.lie.map(|s| LieDoc {
                k_fixed_dim: s.k_fixed_dim,
                h_fixed_dim: s.h_fixed_dim,
                quotient_dim: s.quotient_dim,
                abelianization_dim: s.abelianization_dim,
            }),
            quotient: r.quotient.as_ref().map(|q| QuotientDoc {
                degree_bound: q.degree_bound,
                dim_t: q.dim_t,
                dim_s: q.dim_s,
                exactness: exactness_str(q.exactness).into(),
                dim: q.dim,
                real_rank: q.real_rank,
                complex_rank: q.complex_rank,
            }),
        }
    }
}

impl From<&AbelianizationReport> for ReportDoc {
    fn from(r: &AbelianizationReport) -> Self {
        let mut summands = Vec::new();
        for o in &r.orbits {
            let t = o.totals();
            let parts = [
                ("R", t.real_rank),
                ("C", t.complex_rank),
                ("lie", t.lie_dim),
                ("quotient-R", t.quotient_real_rank),
                ("quotient-C", t.quotient_complex_rank),
            ];
            for (kind, rank) in parts {
                if rank > 0 {
                    summands.push(SummandDoc {
                        orbit: o.label.clone(),
                        kind: kind.into(),
                        rank,
                    });
                }
            }
        }
        Self {
            orbits: r.orbits.iter().map(OrbitDoc::from).collect(),
            totals: (&r.totals).into(),
            summands,
        }
    }
}

fn direct_sum(real: usize, complex: usize, extra: Option<usize>) -> String {
    let mut parts = Vec::new();
    if real > 0 {
        parts.push(format!("R^{real}"));
    }
    if complex > 0 {
        parts.push(format!("C^{complex}"));
    }
    if let Some(d) = extra.filter(|&d| d > 0) {
        parts.push(format!("(Lie part of dim {d})"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn render_text(r: &AbelianizationReport) -> String {
    let mut s = String::new();
    for o in &r.orbits {
        let _ = writeln!(s, "orbit {}: slice dim {}", o.label, o.slice_dim);
        let _ = writeln!(
            s,
            "  commutant dim {}, center dim {}, [A,A] dim {}, abelianization dim {}",
            o.algebra_dim, o.center_dim, o.commutator_dim, o.abelianization_dim
        );
        let _ = writeln!(
            s,
            "  (m, l) = ({}, {})  ->  {}{}",
            o.m,
            o.l,
            direct_sum(o.m - o.l, o.l, None),
            if o.split_verified { "" } else { "  [split check FAILED]" }
        );
        if let Some(lie) = &o.lie {
            let _ = writeln!(
                s,
                "  Lie part: k^H dim {}, h^H dim {}, quotient dim {}, abelianization dim {}",
                lie.k_fixed_dim, lie.h_fixed_dim, lie.quotient_dim, lie.abelianization_dim
            );
        }
        if let Some(q) = &o.quotient {
            let _ = writeln!(
                s,
                "  orbit space: dim T {}, dim S {} ({} at degree {}), Z/s = {}",
                q.dim_t,
                q.dim_s,
                exactness_str(q.exactness),
                q.degree_bound,
                direct_sum(q.real_rank, q.complex_rank, None)
            );
            if q.exactness == Exactness::DegreeBounded {
                let _ = writeln!(
                    s,
                    "  note: s is only known to contain the true kernel at this degree bound"
                );
            }
        }
    }
    let t = &r.totals;
    let _ = writeln!(
        s,
        "total: {}",
        direct_sum(t.real_rank, t.complex_rank, Some(t.lie_dim))
    );
    if r.orbits.iter().any(|o| o.quotient.is_some()) {
        let _ = writeln!(
            s,
            "orbit-space total: {}",
            direct_sum(t.quotient_real_rank, t.quotient_complex_rank, None)
        );
    }
    s
}

pub fn render_verification(v: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &v.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(s, "{tag} {}: {}", c.subject, c.name);
        if !c.detail.is_empty() {
            let _ = write!(s, " ({})", c.detail);
        }
        s.push('\n');
    }
    let passed = v.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(s, "{passed}/{} checks passed", v.checks.len());
    s
}

pub fn to_json(r: &AbelianizationReport) -> String {
    serde_json::to_string_pretty(&ReportDoc::from(r)).expect("reports always serialize")
}

pub fn from_json(text: &str) -> serde_json::Result<ReportDoc> {
    serde_json::from_str(text)
}
