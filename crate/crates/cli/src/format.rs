//! The JSON input document.
//!
//! ```json
//! {"orbits": [{"label": "c3",
//!              "slice_action": {"kind": "finite", "dim": 2,
//!                               "generators": [[["0", "-1"], ["1", "-1"]]]},
//!              "quotient": true}],
//!  "options": {"degree_bound": 3}}
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"`; plain JSON integers are accepted too.

use std::fmt;

use equiab_core::exactlin::{parse_rational, QMatrix, Subspace, Q};
use equiab_core::liealg::{IsotropyData, LieAlgebraSC};
use equiab_core::pipeline::{OrbitModel, PipelineOptions};
use equiab_core::symmetry::{ConnectedAction, FiniteGroup, GroupAction, TorusAction};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational that serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Q);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_rational(v)
                    .map(Rational)
                    .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(Q::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Q::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub type MatrixDoc = Vec<Vec<Rational>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default)]
    pub orbits: Vec<OrbitDoc>,
    #[serde(default)]
    pub options: OptionsDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    pub label: String,
    pub slice_action: ActionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy_lie: Option<LieDoc>,
    #[serde(default)]
    pub quotient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDoc {
    Finite { dim: usize, generators: Vec<MatrixDoc> },
    Torus { weights: Vec<Vec<i64>> },
    ConnectedLie { dim: usize, generators: Vec<MatrixDoc> },
}

/// `𝔨` by structure constants `[e_i, e_j] = Σ_k c·e_k` listed as `[i, j, k, c]`,
/// `𝔥` by spanning vectors, and the isotropy action on `𝔨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, Rational)>,
    #[serde(default)]
    pub h: Vec<Vec<Rational>>,
    #[serde(default)]
    pub automorphisms: Vec<MatrixDoc>,
    #[serde(default)]
    pub derivations: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_cap: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed input: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{location}: {message}")]
    Shape { location: String, message: String },
    #[error("{location}: {source}")]
    Invalid {
        location: String,
        source: equiab_core::Error,
    },
}

impl InputError {
    fn shape(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Shape {
            location: location.into(),
            message: message.into(),
        }
    }
}

/// A parsed and validated input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub models: Vec<OrbitModel>,
    pub options: OptionsDoc,
}

impl Input {
    pub fn pipeline_options(&self) -> PipelineOptions {
        let mut o = PipelineOptions {
            degree_bound: self.options.degree_bound,
            ..PipelineOptions::default()
        };
        if let Some(s) = self.options.seed {
            o.seed = s;
        }
        if let Some(c) = self.options.group_cap {
            o.group_cap = c;
        }
        o
    }
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let doc: InputDoc = serde_json::from_str(text)?;
    doc.validate()
}

pub fn parse_reader<R: std::io::Read>(r: R) -> Result<Input, InputError> {
    let doc: InputDoc = serde_json::from_reader(r)?;
    doc.validate()
}

fn matrix(doc: &MatrixDoc, dim: usize, location: &str) -> Result<QMatrix, InputError> {
    if doc.len() != dim || doc.iter().any(|r| r.len() != dim) {
        return Err(InputError::shape(location, format!("expected a {dim}×{dim} matrix")));
    }
    let rows = doc.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    Ok(QMatrix::from_rows(rows).expect("rows checked"))
}

fn matrix_doc(m: &QMatrix) -> MatrixDoc {
    m.row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(Rational).collect())
        .collect()
}

fn invalid(location: &str) -> impl FnOnce(equiab_core::Error) -> InputError + '_ {
    move |source| InputError::Invalid {
        location: location.into(),
        source,
    }
}

impl InputDoc {
    pub fn validate(&self) -> Result<Input, InputError> {
        let models = self
            .orbits
            .iter()
            .enumerate()
            .map(|(i, o)| o.validate(&format!("orbits[{i}] ({})", o.label)))
            .collect::<Result<_, _>>()?;
        Ok(Input {
            models,
            options: self.options.clone(),
        })
    }

    pub fn from_models(models: &[OrbitModel], options: OptionsDoc) -> Self {
        Self {
            orbits: models.iter().map(OrbitDoc::from_model).collect(),
            options,
        }
    }
}

impl OrbitDoc {
    fn validate(&self, loc: &str) -> Result<OrbitModel, InputError> {
        let act_loc = format!("{loc}.slice_action");
        let action = self.slice_action.validate(&act_loc)?;
        let lie = self
            .isotropy_lie
            .as_ref()
            .map(|l| l.validate(&format!("{loc}.isotropy_lie")))
            .transpose()?;
        OrbitModel::new(self.label.clone(), action, lie, self.quotient).map_err(|e| {
            let source = match e {
                equiab_core::Error::Orbit { source, .. } => *source,
                e => e,
            };
            InputError::Invalid {
                location: act_loc,
                source,
            }
        })
    }

    pub fn from_model(m: &OrbitModel) -> Self {
        Self {
            label: m.label.clone(),
            slice_action: ActionDoc::from_action(&m.slice_action),
            isotropy_lie: m.isotropy_lie.as_ref().map(LieDoc::from_data),
            quotient: m.quotient_requested,
        }
    }
}

impl ActionDoc {
    fn validate(&self, loc: &str) -> Result<GroupAction, InputError> {
        match self {
            Self::Finite { dim, generators } | Self::ConnectedLie { dim, generators } => {
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| matrix(g, *dim, &format!("{loc}.generators[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                if matches!(self, Self::Finite { .. }) {
                    FiniteGroup::new(*dim, gens)
                        .map(GroupAction::Finite)
                        .map_err(invalid(loc))
                } else {
                    ConnectedAction::new(*dim, gens)
                        .map(GroupAction::Connected)
                        .map_err(invalid(loc))
                }
            }
            Self::Torus { weights } => TorusAction::new(weights.clone())
                .map(GroupAction::Torus)
                .map_err(invalid(loc)),
        }
    }

    pub fn from_action(a: &GroupAction) -> Self {
        match a {
            GroupAction::Finite(g) => Self::Finite {
                dim: g.dim(),
                generators: g.generators().iter().map(|e| matrix_doc(&e.matrix)).collect(),
            },
            GroupAction::Torus(t) => Self::Torus {
                weights: t.weights().to_vec(),
            },
            GroupAction::Connected(c) => Self::ConnectedLie {
                dim: c.dim(),
                generators: c.generators().iter().map(matrix_doc).collect(),
            },
        }
    }
}

impl LieDoc {
    fn validate(&self, loc: &str) -> Result<IsotropyData, InputError> {
        let n = self.dim;
        let entries: Vec<_> = self
            .brackets
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, c.0.clone()))
            .collect();
        let k = LieAlgebraSC::from_entries(n, &entries).map_err(invalid(&format!("{loc}.brackets")))?;
        if let Some(i) = self.h.iter().position(|v| v.len() != n) {
            return Err(InputError::shape(
                format!("{loc}.h[{i}]"),
                format!("expected a vector of length {n}"),
            ));
        }
        let h = Subspace::from_vectors(n, self.h.iter().map(|v| v.iter().map(|x| x.0.clone()).collect()));
        let mats = |list: &[MatrixDoc], name: &str| {
            list.iter()
                .enumerate()
                .map(|(i, m)| matrix(m, n, &format!("{loc}.{name}[{i}]")))
                .collect::<Result<Vec<_>, _>>()
        };
        let autos = mats(&self.automorphisms, "automorphisms")?;
        let ders = mats(&self.derivations, "derivations")?;
        IsotropyData::new(k, h, autos, ders).map_err(invalid(loc))
    }

    pub fn from_data(d: &IsotropyData) -> Self {
        let n = d.k().dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in d.k().structure(i, j).iter().enumerate() {
                    if *c != Q::from_integer(0.into()) {
                        brackets.push((i, j, k, Rational(c.clone())));
                    }
                }
            }
        }
        Self {
            dim: n,
            brackets,
            h: d
                .h()
                .basis()
                .iter()
                .map(|v| v.iter().cloned().map(Rational).collect())
                .collect(),
            automorphisms: d.automorphisms().iter().map(matrix_doc).collect(),
            derivations: d.derivations().iter().map(matrix_doc).collect(),
        }
    }
}

pub fn serialize_input(models: &[OrbitModel], options: &OptionsDoc) -> String {
    serde_json::to_string_pretty(&InputDoc::from_models(models, options.clone()))
        .expect("input documents always serialize")
}
