//! JSON file formats for towers, raw towers and certificates.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use whitney_core::planner::{Move, MoveCertificate};
use whitney_core::tower::{IhxSite, RawDisk, RawPoint, RawTower, TowerModel};
use whitney_core::tree::{parse_tree, EdgePath, ParsedTree, PuncturedTree, RootedTree, Sign};
use whitney_core::word::GroupWord;

const MAX_ALPHABET: u8 = 26;

fn sign_of(v: i64) -> Result<Sign> {
    match v {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => bail!("sign must be 1 or -1, got {v}"),
    }
}

/// `inner(A,B,g)` split at the puncture, without sign.
pub fn unsigned_tree(p: &PuncturedTree) -> String {
    let (a, b, g) = p.split();
    format!("inner({a},{b},{g})")
}

fn parse_punctured(sign: i64, tree: &str, puncture: &str, m: u32) -> Result<PuncturedTree> {
    let parsed = parse_tree(tree, m, MAX_ALPHABET).with_context(|| format!("in tree {tree:?}"))?;
    let sign = sign_of(sign)? * parsed.sign_or_plus();
    let ParsedTree::Inner { left, right, word } = parsed.tree else {
        bail!("point tree {tree:?} must have the form inner(A,B,g)");
    };
    let p = PuncturedTree::from_split(sign, &left, &right, &word);
    let path: EdgePath = puncture.parse().with_context(|| format!("in puncture {puncture:?}"))?;
    let e = p.resolve(&path).with_context(|| format!("puncture {puncture:?} of {tree:?}"))?;
    Ok(p.with_marked(e)?)
}

fn parse_bracket(text: &str, m: u32) -> Result<RootedTree> {
    match parse_tree(text, m, 0).with_context(|| format!("in bracket {text:?}"))? {
        whitney_core::tree::Parsed { sign: None, tree: ParsedTree::Rooted(t) } => Ok(t),
        _ => bail!("{text:?} is not a bracket"),
    }
}

fn parse_word(text: &str) -> Result<GroupWord> {
    GroupWord::parse(text, MAX_ALPHABET, 0).with_context(|| format!("in group word {text:?}"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub sign: i64,
    pub tree: String,
    #[serde(default)]
    pub puncture: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerJson {
    pub m: u32,
    pub order: usize,
    pub points: Vec<PointJson>,
}

impl TowerJson {
    pub fn from_model(model: &TowerModel) -> TowerJson {
        TowerJson {
            m: model.m(),
            order: model.declared_order(),
            points: model
                .points()
                .iter()
                .map(|p| PointJson {
                    sign: p.tree().sign().value(),
                    tree: unsigned_tree(p.tree()),
                    puncture: String::new(),
                })
                .collect(),
        }
    }

    /// The model; point ids are positions in the file.
    pub fn to_model(&self) -> Result<TowerModel> {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| parse_punctured(p.sign, &p.tree, &p.puncture, self.m).with_context(|| format!("point {i}")))
            .collect::<Result<Vec<_>>>()?;
        let alphabet = points.iter().map(|p| p.tree().max_generator()).max().unwrap_or(0);
        Ok(TowerModel::from_points(self.m, alphabet, self.order, points)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskJson {
    pub bracket: String,
    #[serde(default)]
    pub whisker: String,
    #[serde(default = "plus")]
    pub orientation: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPointJson {
    pub sign: i64,
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub word: String,
    #[serde(default)]
    pub paired_by: Option<String>,
}

fn plus() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTowerJson {
    pub m: u32,
    pub order: usize,
    /// Orientations of the order-zero surfaces; all positive when omitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orientations: Vec<i64>,
    pub disks: Vec<DiskJson>,
    pub points: Vec<RawPointJson>,
}

impl RawTowerJson {
    pub fn to_raw(&self) -> Result<RawTower> {
        let m = self.m;
        let disks = self
            .disks
            .iter()
            .map(|d| {
                Ok(RawDisk {
                    bracket: parse_bracket(&d.bracket, m)?,
                    whisker: parse_word(&d.whisker)?,
                    orientation: sign_of(d.orientation)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok(RawPoint {
                    left: parse_bracket(&p.left, m)?,
                    right: parse_bracket(&p.right, m)?,
                    sign: sign_of(p.sign)?,
                    word: parse_word(&p.word)?,
                    paired_by: p.paired_by.as_deref().map(|b| parse_bracket(b, m)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = disks
            .iter()
            .map(|d| d.whisker.max_generator())
            .chain(points.iter().map(|p| p.word.max_generator()))
            .max()
            .unwrap_or(0);
        let surface_orientations = self.orientations.iter().map(|&o| sign_of(o)).collect::<Result<Vec<_>>>()?;
        Ok(RawTower { m, order: self.order, alphabet, surface_orientations, disks, points })
    }

    pub fn from_raw(raw: &RawTower) -> RawTowerJson {
        RawTowerJson {
            m: raw.m,
            order: raw.order,
            orientations: raw.surface_orientations.iter().map(|s| s.value()).collect(),
            disks: raw
                .disks
                .iter()
                .map(|d| DiskJson {
                    bracket: d.bracket.to_string(),
                    whisker: d.whisker.to_string(),
                    orientation: d.orientation.value(),
                })
                .collect(),
            points: raw
                .points
                .iter()
                .map(|p| RawPointJson {
                    sign: p.sign.value(),
                    left: p.left.to_string(),
                    right: p.right.to_string(),
                    word: p.word.to_string(),
                    paired_by: p.paired_by.as_ref().map(ToString::to_string),
                })
                .collect(),
        }
    }
}

/// Reads a tower file, either a model or a raw tower (recognized by its
/// `disks` field).
pub fn read_tower(text: &str) -> Result<TowerModel> {
    let value: serde_json::Value = serde_json::from_str(text).context("tower file is not valid JSON")?;
    if value.get("disks").is_some() {
        let raw: RawTowerJson = serde_json::from_value(value).context("malformed raw tower")?;
        Ok(whitney_core::tower::extract_model(&raw.to_raw()?)?)
    } else {
        let t: TowerJson = serde_json::from_value(value).context("malformed tower")?;
        t.to_model()
    }
}

pub fn write_tower(model: &TowerModel) -> String {
    serde_json::to_string_pretty(&TowerJson::from_model(model)).expect("serializable") + "\n"
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case", deny_unknown_fields)]
pub enum MoveJson {
    IhxInsert {
        sign: i64,
        tree: String,
        edge: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        i: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x: Option<String>,
    },
    IhxSplit {
        point: u64,
        edge: String,
    },
    PunctureMove {
        point: u64,
        edge: String,
    },
    CancelPair {
        p: u64,
        q: u64,
    },
}

impl MoveJson {
    pub fn from_move(mv: &Move) -> MoveJson {
        match mv {
            Move::IhxInsert { site, sign } => {
                let triple = site.triple().expect("certificate sites are interior edges");
                MoveJson::IhxInsert {
                    sign: sign.value(),
                    tree: unsigned_tree(&site.tree),
                    edge: site.edge.to_string(),
                    i: Some(triple.i.to_string()),
                    h: Some(triple.h.to_string()),
                    x: Some(triple.x.to_string()),
                }
            }
            Move::IhxSplit { point, edge } => MoveJson::IhxSplit { point: *point, edge: edge.to_string() },
            Move::PunctureMove { point, edge } => MoveJson::PunctureMove { point: *point, edge: edge.to_string() },
            Move::CancelPair { p, q } => MoveJson::CancelPair { p: *p, q: *q },
        }
    }

    pub fn to_move(&self, m: u32) -> Result<Move> {
        let path = |s: &str| s.parse::<EdgePath>().with_context(|| format!("in edge path {s:?}"));
        Ok(match self {
            MoveJson::IhxInsert { sign, tree, edge, i, h, x } => {
                let site = IhxSite { tree: parse_punctured(1, tree, "", m)?, edge: path(edge)? };
                let triple = site.triple()?;
                for (given, actual, name) in [(i, &triple.i, "i"), (h, &triple.h, "h"), (x, &triple.x, "x")] {
                    if let Some(text) = given {
                        let g = parse_tree(text, m, MAX_ALPHABET)?.signed()?;
                        if !whitney_core::random::same_term(&g, &actual.signed()) {
                            bail!("{name} = {text} does not match the site");
                        }
                    }
                }
                Move::IhxInsert { site, sign: sign_of(*sign)? }
            }
            MoveJson::IhxSplit { point, edge } => Move::IhxSplit { point: *point, edge: path(edge)? },
            MoveJson::PunctureMove { point, edge } => Move::PunctureMove { point: *point, edge: path(edge)? },
            MoveJson::CancelPair { p, q } => Move::CancelPair { p: *p, q: *q },
        })
    }
}

pub fn write_certificate(cert: &MoveCertificate) -> String {
    let moves: Vec<MoveJson> = cert.moves.iter().map(MoveJson::from_move).collect();
    serde_json::to_string_pretty(&moves).expect("serializable") + "\n"
}

/// Reads a certificate for `model`.
pub fn read_certificate(text: &str, model: &TowerModel) -> Result<MoveCertificate> {
    let moves: Vec<MoveJson> = serde_json::from_str(text).context("malformed certificate")?;
    let moves = moves
        .iter()
        .enumerate()
        .map(|(k, mv)| mv.to_move(model.m()).with_context(|| format!("move {k}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(MoveCertificate { order: model.declared_order(), moves })
}
