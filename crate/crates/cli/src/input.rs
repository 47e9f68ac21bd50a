//! Group, representation and matrix files.

use std::path::Path;

use brauer_core::group::{close_matrices, close_permutations, CentralInvolution, FiniteGroup};
use brauer_core::rational::{format_q, parse_q, q, QMatrix, Q};
use brauer_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// A rational entry: an integer or a "p/q" string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            Entry::Int(n) => Ok(q(*n)),
            Entry::Text(s) => parse_q(s),
        }
    }

    pub fn from_q(x: &Q) -> Entry {
        Entry::Text(format_q(x))
    }
}

pub type MatrixEntries = Vec<Vec<Entry>>;

pub fn to_qmatrix(m: &MatrixEntries) -> Result<QMatrix> {
    let rows = m.iter().map(|r| r.iter().map(Entry::to_q).collect::<Result<Vec<Q>>>()).collect::<Result<Vec<_>>>()?;
    QMatrix::from_rows(rows)
}

pub fn from_qmatrix(m: &QMatrix) -> MatrixEntries {
    m.to_rows().iter().map(|r| r.iter().map(Entry::from_q).collect()).collect()
}

/// An element given by index or by a word like "g0 g1" in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Word(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupFile {
    Permutations {
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u: Option<ElementRef>,
    },
    Matrices {
        generators: Vec<MatrixEntries>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u: Option<ElementRef>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u: Option<ElementRef>,
    },
}

/// A loaded group with its optional involution and defining matrices.
pub struct LoadedGroup {
    pub group: FiniteGroup,
    pub u: Option<usize>,
    /// One matrix per element when the group was given by matrices.
    pub matrices: Option<Vec<QMatrix>>,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

impl GroupFile {
    pub fn load(&self, cap: usize) -> Result<LoadedGroup> {
        let (group, matrices, u) = match self {
            GroupFile::Permutations { generators, u } => {
                let perms = if generators.is_empty() { vec![vec![0]] } else { generators.clone() };
                (close_permutations(&perms, cap)?, None, u)
            }
            GroupFile::Matrices { generators, u } => {
                let mats = generators.iter().map(to_qmatrix).collect::<Result<Vec<_>>>()?;
                if mats.is_empty() {
                    return Err(Error::Invalid("matrix groups need at least one generator".into()));
                }
                let (g, elements) = close_matrices(&mats, cap)?;
                (g, Some(elements), u)
            }
            GroupFile::Table { table, labels, u } => {
                if table.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                (FiniteGroup::from_table(table.clone(), labels.clone())?, None, u)
            }
        };
        let u = u.as_ref().map(|r| resolve_element(&group, r)).transpose()?;
        Ok(LoadedGroup { group, u, matrices })
    }

    /// The group as a table file, which re-loads to the same indexing.
    pub fn from_group(g: &FiniteGroup, u: Option<usize>) -> GroupFile {
        GroupFile::Table {
            table: g.table(),
            labels: g.labels().map(<[String]>::to_vec),
            u: u.map(ElementRef::Index),
        }
    }
}

/// "e" or "1" for the identity, otherwise generator names g0, g1, … separated by
/// spaces or '*', multiplied left to right.
pub fn resolve_element(g: &FiniteGroup, r: &ElementRef) -> Result<usize> {
    match r {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(Error::Invalid(format!("element index {i} out of range"))),
        ElementRef::Word(w) => {
            let mut x = g.identity();
            for tok in w.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
                if tok == "e" || tok == "1" {
                    continue;
                }
                let i: usize = tok
                    .strip_prefix('g')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Invalid(format!("bad generator name {tok:?}")))?;
                let s = *g.generators().get(i).ok_or_else(|| Error::Invalid(format!("no generator g{i}")))?;
                x = g.mul(x, s);
            }
            Ok(x)
        }
    }
}

pub fn involution(g: &FiniteGroup, u: Option<usize>) -> Result<CentralInvolution> {
    let u = u.ok_or_else(|| Error::Invalid("a central involution is required (--u or \"u\" in the group file)".into()))?;
    CentralInvolution::new(g, u)
}

/// Representation file: matrices for the group generators, or for every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixEntries>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<MatrixEntries>>,
}

/// A single symmetric matrix, for Σ or A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub matrix: MatrixEntries,
}

/// Sparse cocycle file: the modulus, the group order and "i,j" → value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub modulus: u64,
    pub order: usize,
    pub values: std::collections::BTreeMap<String, u64>,
}

impl CocycleFile {
    pub fn from_cochain(c: &brauer_core::cohomology::Cochain2) -> CocycleFile {
        CocycleFile {
            modulus: c.modulus(),
            order: c.order(),
            values: c.sparse().into_iter().map(|((i, j), v)| (format!("{i},{j}"), v)).collect(),
        }
    }

    pub fn to_cochain(&self, g: &FiniteGroup) -> Result<brauer_core::cohomology::Cochain2> {
        if self.order != g.order() {
            return Err(Error::Invalid(format!("cocycle is for order {}, group has {}", self.order, g.order())));
        }
        let mut entries = Vec::new();
        for (k, &v) in &self.values {
            let (i, j) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Invalid(format!("bad cocycle key {k:?}")))?;
            entries.push(((i, j), v));
        }
        brauer_core::cohomology::Cochain2::from_sparse(g, self.modulus, &entries)
    }
}
