//! JSON export of representation matrices in Gelfand–Tsetlin type bases.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::{inverse, Rat, SparseMat, Vector};
use crate::gln::GlnIrrep;
use crate::liealg_bcd::BcdIrrep;
use crate::patterns::flip_convention;
use crate::{Error, Result, Series};

pub const SCHEMA: &str = "gt-export/1";

/// One exported representation. Generator entries are `[row, col, "p/q"]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Export {
    pub schema: String,
    pub algebra: String,
    pub series: Series,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub n: usize,
    pub lambda: Vec<i64>,
    pub dim: usize,
    pub patterns: Vec<Value>,
    pub generators: BTreeMap<String, Vec<(usize, usize, Rat)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normsq: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Rat>>>,
}

fn entries(m: &SparseMat) -> Vec<(usize, usize, Rat)> {
    m.entries().map(|(r, c, v)| (r, c, v.clone())).collect()
}

fn algebra_name(s: Series) -> &'static str {
    match s {
        Series::A => "gl",
        Series::C => "sp",
        _ => "so",
    }
}

/// Export of `L(λ)` in the basis `ξ_Λ`.
pub fn export_gl(m: &GlnIrrep) -> Export {
    let generators =
        m.e.iter()
            .map(|(&(i, j), g)| (format!("E_{i}_{j}"), entries(g)))
            .collect();
    Export {
        schema: SCHEMA.into(),
        algebra: "gl".into(),
        series: Series::A,
        convention: None,
        n: m.n,
        lambda: m.lambda.clone(),
        dim: m.basis.len(),
        patterns: m
            .basis
            .iter()
            .map(|p| serde_json::to_value(&p.rows).expect("pattern rows"))
            .collect(),
        generators,
        normsq: Some(m.normsq.clone()),
        gram: None,
    }
}

/// Matrices of all `F_ij` in the basis given by `cols`, with its Gram matrix.
fn in_basis(
    m: &BcdIrrep,
    cols: &[Vector],
) -> Result<(BTreeMap<String, Vec<(usize, usize, Rat)>>, Vec<Vector>)> {
    let d = m.dim();
    let b = SparseMat::from_columns(d, cols);
    let inv =
        inverse(&b.to_dense()).ok_or_else(|| Error::Contract("basis is not invertible".into()))?;
    let inv = SparseMat::from_dense(&inv, d);
    let mut out = BTreeMap::new();
    for (&(i, j), f) in m.generators() {
        let g = inv.try_mul(&f.try_mul(&b)?)?;
        out.insert(format!("F_{i}_{j}"), entries(&g));
    }
    Ok((out, m.gram_of(cols)))
}

fn diagonal_or_full(gram: Vec<Vector>) -> (Option<Vec<Rat>>, Option<Vec<Vec<Rat>>>) {
    let diag = gram
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
    if diag {
        (
            Some(gram.iter().enumerate().map(|(i, r)| r[i].clone()).collect()),
            None,
        )
    } else {
        (None, Some(gram))
    }
}

/// Export of `V(λ)` (non-positive convention) in the basis of [`BcdIrrep::gt_basis_bcd`].
pub fn export_bcd(m: &BcdIrrep) -> Result<Export> {
    let basis = m.gt_basis_bcd()?;
    let cols: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let (generators, gram) = in_basis(m, &cols)?;
    let (normsq, gram) = diagonal_or_full(gram);
    let patterns = basis
        .iter()
        .map(|(p, _)| match p {
            crate::liealg_bcd::BcdPattern::B(p) => serde_json::to_value(p),
            crate::liealg_bcd::BcdPattern::C(p) => serde_json::to_value(p),
            crate::liealg_bcd::BcdPattern::D(p) => serde_json::to_value(p),
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Contract(e.to_string()))?;
    Ok(Export {
        schema: SCHEMA.into(),
        algebra: algebra_name(m.series()).into(),
        series: m.series(),
        convention: Some("s3".into()),
        n: m.n(),
        lambda: m.lambda.clone(),
        dim: m.dim(),
        patterns,
        generators,
        normsq,
        gram,
    })
}

/// Export of an orthogonal `V(λ)` (positive convention) in the basis of [`BcdIrrep::orth_gt_basis`].
pub fn export_orth(m: &BcdIrrep) -> Result<Export> {
    let basis = m.orth_gt_basis()?;
    let cols: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let (generators, gram) = in_basis(m, &cols)?;
    let (normsq, gram) = diagonal_or_full(gram);
    let patterns = basis
        .iter()
        .map(|(p, _)| match p {
            crate::liealg_bcd::OrthPattern::B(p) => serde_json::to_value(p),
            crate::liealg_bcd::OrthPattern::D(p) => serde_json::to_value(p),
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Contract(e.to_string()))?;
    Ok(Export {
        schema: SCHEMA.into(),
        algebra: "so".into(),
        series: m.series(),
        convention: Some("s4".into()),
        n: m.n(),
        lambda: flip_convention(&m.lambda),
        dim: m.dim(),
        patterns,
        generators,
        normsq,
        gram,
    })
}

impl Export {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let e: Export = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if e.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", e.schema)));
        }
        Ok(e)
    }

    /// Generator matrices keyed by label.
    pub fn matrices(&self) -> Result<BTreeMap<String, SparseMat>> {
        self.generators
            .iter()
            .map(|(k, es)| {
                let m = SparseMat::from_triplets(
                    self.dim,
                    self.dim,
                    es.iter().map(|(r, c, v)| (*r, *c, v.clone())),
                )?;
                Ok((k.clone(), m))
            })
            .collect()
    }
}
