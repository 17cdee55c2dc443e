use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SteenbrinkError;
use crate::exactlinalg::{ExactMatrix, ExactScalar, Matrix};

pub type HodgeType = (i32, i32);

/// Cohomology of one piece in one degree, in a Hodge-adapted basis.
///
/// Basis vectors are grouped by type, larger `p` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub rank: usize,
    pub hodge: BTreeMap<HodgeType, usize>,
    /// Antilinear real structure `v ↦ J v̄`.
    pub conj: Matrix,
    /// `rank × rank(top − d)` matrix of `∫ e_i ∪ f_j`.
    pub gram: ExactMatrix,
}

impl DegreeData {
    pub fn zero() -> Self {
        DegreeData {
            rank: 0,
            hodge: BTreeMap::new(),
            conj: Matrix::zeros(0, 0),
            gram: ExactMatrix::untwisted(Matrix::zeros(0, 0)),
        }
    }

    /// Build from per-vector types (already grouped, larger `p` first), real structure and Gram.
    pub fn from_types(types: &[HodgeType], conj: Matrix, gram: Matrix) -> Self {
        let mut hodge = BTreeMap::new();
        for &t in types {
            *hodge.entry(t).or_insert(0) += 1;
        }
        let data = DegreeData {
            rank: types.len(),
            hodge,
            conj,
            gram: ExactMatrix::untwisted(gram),
        };
        debug_assert_eq!(data.types(), types, "basis must be grouped by Hodge type");
        data
    }

    /// Hodge type of each basis vector.
    pub fn types(&self) -> Vec<HodgeType> {
        let mut ordered: Vec<(&HodgeType, &usize)> = self.hodge.iter().collect();
        ordered.sort_by_key(|(&(p, q), _)| (-p, q));
        ordered
            .into_iter()
            .flat_map(|(&t, &n)| std::iter::repeat_n(t, n))
            .collect()
    }
}

/// Connected piece of a stratum `E(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub id: String,
    /// Sorted component indices `I` with the piece inside `E_I`.
    pub components: Vec<usize>,
    pub cohomology: BTreeMap<u32, DegreeData>,
}

impl Piece {
    pub fn degree(&self, d: u32) -> DegreeData {
        self.cohomology
            .get(&d)
            .cloned()
            .unwrap_or_else(DegreeData::zero)
    }

    pub fn rank(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        self.cohomology.get(&(d as u32)).map_or(0, |c| c.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub depth: usize,
    pub pieces: Vec<Piece>,
}

/// `ι*: H^d(from) → H^d(to)` with `to` one level deeper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub from: String,
    pub to: String,
    pub degree: u32,
    pub matrix: Matrix,
}

/// Lefschetz operators `H^d → H^{d+2}` of the Kähler class, per piece and degree.
pub type KahlerData = BTreeMap<String, BTreeMap<u32, Matrix>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncInstance {
    pub name: String,
    pub fiber_dim: usize,
    pub strata: Vec<Stratum>,
    pub restrictions: Vec<Restriction>,
    pub kahler: Option<KahlerData>,
    pub a0: Option<Vec<String>>,
    pub frame: Option<serde_json::Value>,
}

impl SncInstance {
    pub fn max_depth(&self) -> usize {
        self.strata
            .iter()
            .filter(|s| !s.pieces.is_empty())
            .map(|s| s.depth)
            .max()
            .unwrap_or(0)
    }

    pub fn pieces_at(&self, depth: usize) -> &[Piece] {
        self.strata
            .iter()
            .find(|s| s.depth == depth)
            .map_or(&[][..], |s| &s.pieces[..])
    }

    pub fn piece(&self, id: &str) -> Option<&Piece> {
        self.strata
            .iter()
            .flat_map(|s| &s.pieces)
            .find(|p| p.id == id)
    }

    /// Real dimension of top cohomology of depth-`k` pieces.
    pub fn top_degree(&self, depth: usize) -> i64 {
        2 * (self.fiber_dim as i64 + 1 - depth as i64)
    }

    pub fn component_count(&self) -> usize {
        self.pieces_at(1)
            .iter()
            .flat_map(|p| p.components.iter())
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Total rank of `H^d(E(depth))`.
    pub fn stratum_rank(&self, depth: usize, d: i64) -> usize {
        self.pieces_at(depth).iter().map(|p| p.rank(d)).sum()
    }
}

// ---- JSON schema 1 ----

type KahlerJson = BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeJson {
    rank: usize,
    hodge: BTreeMap<String, usize>,
    conjugation: Vec<Vec<String>>,
    gram_into_top: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceJson {
    id: String,
    components: Vec<usize>,
    cohomology: BTreeMap<String, DegreeJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumJson {
    depth: usize,
    pieces: Vec<PieceJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RestrictionJson {
    from: String,
    to: String,
    degree: u32,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    schema: u32,
    name: String,
    fiber_dim: usize,
    strata: Vec<StratumJson>,
    restrictions: Vec<RestrictionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kahler: Option<KahlerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<serde_json::Value>,
}

pub const SCHEMA_VERSION: u32 = 1;

fn schema(msg: impl Into<String>) -> SteenbrinkError {
    SteenbrinkError::Schema(msg.into())
}

/// Parse a matrix of scalar strings with a uniform twist, padding empty shapes.
fn parse_exact(
    raw: &[Vec<String>],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<ExactMatrix, SteenbrinkError> {
    if rows == 0 || cols == 0 {
        if raw.iter().any(|r| !r.is_empty()) || (rows == 0 && !raw.is_empty()) {
            return Err(schema(format!("{what}: expected {rows}x{cols} matrix")));
        }
        return Ok(ExactMatrix::untwisted(Matrix::zeros(rows, cols)));
    }
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(schema(format!("{what}: expected {rows}x{cols} matrix")));
    }
    let scalars = raw
        .iter()
        .flatten()
        .map(|s| s.parse::<ExactScalar>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| schema(format!("{what}: {e}")))?;
    ExactMatrix::from_scalars(rows, cols, &scalars).map_err(|e| schema(format!("{what}: {e}")))
}

fn parse_plain(
    raw: &[Vec<String>],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix, SteenbrinkError> {
    let m = parse_exact(raw, rows, cols, what)?;
    if m.twist != 0 {
        return Err(schema(format!("{what}: twisted entries not allowed")));
    }
    Ok(m.coeffs)
}

fn exact_to_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.coeffs.rows())
        .map(|r| {
            (0..m.coeffs.cols())
                .map(|c| m.entry(r, c).to_string())
                .collect()
        })
        .collect()
}

fn parse_type(key: &str) -> Result<HodgeType, SteenbrinkError> {
    let bad = || schema(format!("bad Hodge type key '{key}'"));
    let (p, q) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

impl SncInstance {
    pub fn to_json(&self) -> serde_json::Value {
        let strata = self
            .strata
            .iter()
            .map(|s| StratumJson {
                depth: s.depth,
                pieces: s
                    .pieces
                    .iter()
                    .map(|p| PieceJson {
                        id: p.id.clone(),
                        components: p.components.clone(),
                        cohomology: p
                            .cohomology
                            .iter()
                            .map(|(d, c)| {
                                (
                                    d.to_string(),
                                    DegreeJson {
                                        rank: c.rank,
                                        hodge: c
                                            .hodge
                                            .iter()
                                            .map(|((p, q), n)| (format!("{p},{q}"), *n))
                                            .collect(),
                                        conjugation: c.conj.to_strings(),
                                        gram_into_top: exact_to_strings(&c.gram),
                                    },
                                )
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        let json = InstanceJson {
            schema: SCHEMA_VERSION,
            name: self.name.clone(),
            fiber_dim: self.fiber_dim,
            strata,
            restrictions: self
                .restrictions
                .iter()
                .map(|r| RestrictionJson {
                    from: r.from.clone(),
                    to: r.to.clone(),
                    degree: r.degree,
                    matrix: r.matrix.to_strings(),
                })
                .collect(),
            kahler: self.kahler.as_ref().map(|k| {
                k.iter()
                    .map(|(id, per)| {
                        (
                            id.clone(),
                            per.iter()
                                .map(|(d, m)| (d.to_string(), m.to_strings()))
                                .collect(),
                        )
                    })
                    .collect()
            }),
            a0: self.a0.clone(),
            frame: self.frame.clone(),
        };
        serde_json::to_value(json).expect("serializable instance")
    }

    /// Parse schema-1 JSON; shape problems are `SchemaError`s.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, SteenbrinkError> {
        let raw: InstanceJson =
            serde_json::from_value(value.clone()).map_err(|e| schema(e.to_string()))?;
        if raw.schema != SCHEMA_VERSION {
            return Err(schema(format!("unsupported schema version {}", raw.schema)));
        }
        let n = raw.fiber_dim;
        let mut strata = Vec::new();
        for s in raw.strata {
            if s.depth == 0 || s.depth > n + 1 {
                return Err(schema(format!("stratum depth {} out of range", s.depth)));
            }
            let top = 2 * (n + 1 - s.depth);
            let mut pieces = Vec::new();
            for p in s.pieces {
                let mut ranks = BTreeMap::new();
                for (d, c) in &p.cohomology {
                    let d: u32 = d
                        .parse()
                        .map_err(|_| schema(format!("piece {}: bad degree '{d}'", p.id)))?;
                    ranks.insert(d, c.rank);
                }
                let mut cohomology = BTreeMap::new();
                for (d, c) in &p.cohomology {
                    let d: u32 = d.parse().expect("checked above");
                    if d as usize > top {
                        return Err(schema(format!(
                            "piece {}: degree {d} above top degree {top}",
                            p.id
                        )));
                    }
                    let dual = ranks.get(&(top as u32 - d)).copied().unwrap_or(0);
                    let what = format!("piece {} degree {d}", p.id);
                    let hodge = c
                        .hodge
                        .iter()
                        .map(|(k, v)| Ok((parse_type(k)?, *v)))
                        .collect::<Result<BTreeMap<_, _>, SteenbrinkError>>()?;
                    cohomology.insert(
                        d,
                        DegreeData {
                            rank: c.rank,
                            hodge,
                            conj: parse_plain(
                                &c.conjugation,
                                c.rank,
                                c.rank,
                                &format!("{what} conjugation"),
                            )?,
                            gram: parse_exact(
                                &c.gram_into_top,
                                c.rank,
                                dual,
                                &format!("{what} gram"),
                            )?,
                        },
                    );
                }
                pieces.push(Piece {
                    id: p.id,
                    components: p.components,
                    cohomology,
                });
            }
            strata.push(Stratum {
                depth: s.depth,
                pieces,
            });
        }
        let mut inst = SncInstance {
            name: raw.name,
            fiber_dim: n,
            strata,
            restrictions: Vec::new(),
            kahler: None,
            a0: raw.a0,
            frame: raw.frame,
        };
        for r in raw.restrictions {
            let from = inst
                .piece(&r.from)
                .ok_or_else(|| schema(format!("restriction from unknown piece {}", r.from)))?;
            let to = inst
                .piece(&r.to)
                .ok_or_else(|| schema(format!("restriction to unknown piece {}", r.to)))?;
            let what = format!("restriction {} -> {} degree {}", r.from, r.to, r.degree);
            let matrix = parse_plain(
                &r.matrix,
                to.rank(r.degree as i64),
                from.rank(r.degree as i64),
                &what,
            )?;
            inst.restrictions.push(Restriction {
                from: r.from,
                to: r.to,
                degree: r.degree,
                matrix,
            });
        }
        if let Some(k) = raw.kahler {
            let mut kahler = KahlerData::new();
            for (id, per) in k {
                let piece = inst
                    .piece(&id)
                    .ok_or_else(|| schema(format!("kahler data for unknown piece {id}")))?;
                let mut ops = BTreeMap::new();
                for (d, m) in per {
                    let d: u32 = d
                        .parse()
                        .map_err(|_| schema(format!("kahler: bad degree '{d}'")))?;
                    let what = format!("kahler {id} degree {d}");
                    ops.insert(
                        d,
                        parse_plain(&m, piece.rank(d as i64 + 2), piece.rank(d as i64), &what)?,
                    );
                }
                kahler.insert(id, ops);
            }
            inst.kahler = Some(kahler);
        }
        Ok(inst)
    }
}
