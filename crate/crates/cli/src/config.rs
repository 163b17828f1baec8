//! Job configuration: a TOML file with `[curve]`, `[order]`, `[endo]` and
//! `[pairing]` sections, overridden field by field from the command line.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cmpair::{CmCurve, Curve, Point, PrimeField, QuadInt, QuadOrder};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub curve: CurveSection,
    pub order: Option<OrderSection>,
    #[serde(default)]
    pub endo: EndoSection,
    #[serde(default)]
    pub pairing: PairingSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    pub q: u64,
    pub a: i64,
    pub b: i64,
}

impl Default for CurveSection {
    fn default() -> Self {
        Self {
            q: 401,
            a: -1,
            b: 0,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSection {
    pub trace: i64,
    pub norm: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndoKind {
    J1728,
    J0,
    Table,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoSection {
    pub kind: EndoKind,
    /// `i` for `j1728`, `zeta` for `j0`.
    pub root: Option<i64>,
    #[serde(default)]
    pub map: Vec<MapEntry>,
}

impl Default for EndoSection {
    fn default() -> Self {
        Self {
            kind: EndoKind::J1728,
            root: Some(20),
            map: Vec::new(),
        }
    }
}

/// One row of an inline `[tau]` table; a missing `to` means the point at infinity.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: [i64; 2],
    pub to: Option<[i64; 2]>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSection {
    pub op: Option<String>,
    pub alpha: Option<[i64; 2]>,
    pub beta: Option<[i64; 2]>,
    pub p: Option<PointSpec>,
    pub q: Option<PointSpec>,
    pub aux: Option<PointSpec>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub trials: Option<usize>,
}

/// A point written as `[x, y]` or as the string `"O"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Affine([i64; 2]),
    Named(Infinity),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Infinity {
    O,
}

impl std::str::FromStr for PointSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("o") || t.eq_ignore_ascii_case("inf") {
            return Ok(PointSpec::Named(Infinity::O));
        }
        let [x, y] = parse_pair(t)?;
        Ok(PointSpec::Affine([x, y]))
    }
}

/// Parses `x,y` into two integers.
pub fn parse_pair(s: &str) -> Result<[i64; 2]> {
    let Some((x, y)) = s.split_once(',') else {
        bail!("expected `x,y`, got `{s}`");
    };
    let x = x
        .trim()
        .parse()
        .with_context(|| format!("bad integer in `{s}`"))?;
    let y = y
        .trim()
        .parse()
        .with_context(|| format!("bad integer in `{s}`"))?;
    Ok([x, y])
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    /// Builds the curve with its CM embedding.
    pub fn cm_curve(&self) -> Result<CmCurve> {
        let c = &self.curve;
        let field = PrimeField::new(c.q)?;
        let e = &self.endo;
        let expected = match e.kind {
            EndoKind::J1728 => Some(QuadOrder::gaussian()),
            EndoKind::J0 => Some(QuadOrder::eisenstein()),
            EndoKind::Table => None,
        };
        let order = match (&self.order, expected) {
            (Some(o), _) => QuadOrder::new(o.trace, o.norm)?,
            (None, Some(o)) => o,
            (None, None) => bail!("an [order] section is required for a table endomorphism"),
        };
        if let Some(o) = expected {
            if o != order {
                bail!("[order] ({order}) does not match endo kind {:?}", e.kind);
            }
        }
        let cm = match e.kind {
            EndoKind::J1728 => {
                if c.b.rem_euclid(c.q as i64) != 0 {
                    bail!("a j1728 curve needs b = 0");
                }
                let i = e
                    .root
                    .context("endo.root (a square root of -1) is required")?;
                CmCurve::j1728(field, c.a, i)?
            }
            EndoKind::J0 => {
                if c.a.rem_euclid(c.q as i64) != 0 {
                    bail!("a j0 curve needs a = 0");
                }
                let z = e
                    .root
                    .context("endo.root (a cube root of unity) is required")?;
                CmCurve::j0(field, c.b, z)?
            }
            EndoKind::Table => {
                let curve = Curve::new(field, c.a, c.b)?;
                let mut table = HashMap::from([(Point::Infinity, Point::Infinity)]);
                for m in &e.map {
                    let from = curve.point(m.from[0], m.from[1])?;
                    let to = match m.to {
                        Some([x, y]) => curve.point(x, y)?,
                        None => Point::Infinity,
                    };
                    table.insert(from, to);
                }
                CmCurve::from_table(curve, order, table)?
            }
        };
        Ok(cm)
    }
}

pub fn point(cm: &CmCurve, spec: PointSpec) -> Result<Point> {
    Ok(match spec {
        PointSpec::Named(Infinity::O) => Point::Infinity,
        PointSpec::Affine([x, y]) => cm.curve().point(x, y)?,
    })
}

pub fn quad(order: QuadOrder, [x, y]: [i64; 2]) -> QuadInt {
    order.elem(x, y)
}
