//! JSON file formats. Every rational is a string `"p/q"` or `"p"`; every index
//! is 0-based. Parsers reject unknown keys. See `docs/formats.md`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hopfdiff::actions::ActionData;
use hopfdiff::exactlin::{Mat, Rat};
use hopfdiff::groups::FinGroup;
use hopfdiff::hopf::{FinDimHopf, HopfParts, LinMap};
use hopfdiff::lie::FinLie;
use hopfdiff::solver::{Ansatz, ScheduledGenerator, SearchPlan};

use crate::CliError;

pub fn rat(s: &str) -> Result<Rat, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("`{s}` is not a rational")))
}

pub fn rats(v: &[String]) -> Result<Vec<Rat>, CliError> {
    v.iter().map(|s| rat(s)).collect()
}

pub fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

pub fn mat_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| strs(m.row(i))).collect()
}

pub fn mat_from_rows(rows: &[Vec<String>]) -> Result<Mat, CliError> {
    let rows = rows
        .iter()
        .map(|r| rats(r))
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(rows).map_err(|e| CliError::Input(format!("matrix: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline; the byte format of every file we write.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    /// `mult[i][j]` is the coordinate vector of `e_i·e_j`.
    pub mult: Vec<Vec<Vec<String>>>,
    /// `comult[i]` lists `[j, k, c]` for the terms `c·e_j⊗e_k` of `Δ(e_i)`.
    pub comult: Vec<Vec<(usize, usize, String)>>,
    /// Row `i`, column `j` is the coefficient of `e_i` in `S(e_j)`.
    pub antipode: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coradical_group_basis: Option<Vec<usize>>,
}

impl AlgebraFile {
    pub fn from_hopf(h: &FinDimHopf) -> Self {
        let p = h.to_parts();
        AlgebraFile {
            name: p.name,
            basis: p.basis,
            unit: strs(&p.unit),
            counit: strs(&p.counit),
            mult: p
                .mult
                .iter()
                .map(|row| row.iter().map(|v| strs(v)).collect())
                .collect(),
            comult: p
                .comult
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|(i, j, c)| (*i, *j, c.to_string()))
                        .collect()
                })
                .collect(),
            antipode: mat_rows(&p.antipode),
            coradical_group_basis: p.coradical_group_basis,
        }
    }

    pub fn to_hopf(&self) -> Result<FinDimHopf, CliError> {
        let mult = self
            .mult
            .iter()
            .map(|row| row.iter().map(|v| rats(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let comult = self
            .comult
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(i, j, c)| Ok((*i, *j, rat(c)?)))
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let parts = HopfParts {
            name: self.name.clone(),
            basis: self.basis.clone(),
            mult,
            unit: rats(&self.unit)?,
            comult,
            counit: rats(&self.counit)?,
            antipode: mat_from_rows(&self.antipode)?,
            coradical_group_basis: self.coradical_group_basis.clone(),
        };
        FinDimHopf::from_parts(parts)
            .map_err(|e| CliError::Input(format!("algebra `{}`: {e}", self.name)))
    }
}

/// Hex SHA-256 of the compact serialisation of the algebra file.
pub fn content_hash(h: &FinDimHopf) -> String {
    let compact = serde_json::to_string(&AlgebraFile::from_hopf(h)).expect("serialisable");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

/// A reference from one file to an algebra, by name and content hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRef {
    pub name: String,
    pub sha256: String,
}

impl AlgebraRef {
    pub fn of(h: &FinDimHopf) -> Self {
        AlgebraRef {
            name: h.name().to_string(),
            sha256: content_hash(h),
        }
    }

    pub fn check(&self, h: &FinDimHopf, role: &str) -> Result<(), CliError> {
        let want = AlgebraRef::of(h);
        if self.name != want.name {
            return Err(CliError::Input(format!(
                "{role} refers to `{}`, got `{}`",
                self.name, want.name
            )));
        }
        if self.sha256 != want.sha256 {
            return Err(CliError::Input(format!(
                "{role} hash does not match algebra `{}`",
                want.name
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub domain: AlgebraRef,
    pub codomain: AlgebraRef,
    /// Row `i`, column `j` is the coefficient of `e_i` in the image of `e_j`.
    pub matrix: Vec<Vec<String>>,
}

impl OperatorFile {
    pub fn from_map(f: &LinMap) -> Self {
        OperatorFile {
            domain: AlgebraRef::of(f.domain()),
            codomain: AlgebraRef::of(f.codomain()),
            matrix: mat_rows(f.matrix()),
        }
    }

    pub fn to_map(
        &self,
        domain: &Arc<FinDimHopf>,
        codomain: &Arc<FinDimHopf>,
    ) -> Result<LinMap, CliError> {
        self.domain.check(domain, "operator domain")?;
        self.codomain.check(codomain, "operator codomain")?;
        LinMap::new(
            domain.clone(),
            codomain.clone(),
            mat_from_rows(&self.matrix)?,
        )
        .map_err(|e| CliError::Input(format!("operator: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &FinGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            labels: g.labels().to_vec(),
            table: g.table().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<FinGroup, CliError> {
        FinGroup::new(self.name.clone(), self.labels.clone(), self.table.clone())
            .map_err(|e| CliError::Input(format!("group `{}`: {e}", self.name)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub name: String,
    pub labels: Vec<String>,
    /// `[i, j, v]` with `i < j` and `v` the coordinates of `[e_i, e_j]`.
    pub brackets: Vec<(usize, usize, Vec<String>)>,
}

impl LieFile {
    pub fn from_lie(g: &FinLie) -> Self {
        LieFile {
            name: g.name().to_string(),
            labels: g.labels().to_vec(),
            brackets: g
                .upper_brackets()
                .into_iter()
                .map(|(i, j, v)| (i, j, strs(&v)))
                .collect(),
        }
    }

    pub fn to_lie(&self) -> Result<FinLie, CliError> {
        let upper = self
            .brackets
            .iter()
            .map(|(i, j, v)| Ok((*i, *j, rats(v)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        FinLie::from_upper(self.name.clone(), self.labels.clone(), &upper)
            .map_err(|e| CliError::Input(format!("Lie algebra `{}`: {e}", self.name)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub acting: AlgebraFile,
    pub target: AlgebraFile,
    /// Keyed by acting index `a`; entry `x` is the coordinate vector of `e_a ⇀ e_x`.
    pub tensor: BTreeMap<String, Vec<Vec<String>>>,
}

impl ActionFile {
    pub fn from_action(a: &ActionData) -> Self {
        let n = a.target().dim();
        let tensor = (0..a.acting().dim())
            .map(|k| {
                (
                    k.to_string(),
                    (0..n).map(|x| strs(a.act_basis(k, x))).collect(),
                )
            })
            .collect();
        ActionFile {
            acting: AlgebraFile::from_hopf(a.acting()),
            target: AlgebraFile::from_hopf(a.target()),
            tensor,
        }
    }

    pub fn to_action(&self) -> Result<ActionData, CliError> {
        let acting = Arc::new(self.acting.to_hopf()?);
        let target = Arc::new(self.target.to_hopf()?);
        let k = acting.dim();
        let mut tensor = Vec::with_capacity(k * target.dim());
        for a in 0..k {
            let rows = self
                .tensor
                .get(&a.to_string())
                .ok_or_else(|| CliError::Input(format!("action tensor has no key \"{a}\"")))?;
            for r in rows {
                tensor.push(rats(r)?);
            }
        }
        if self.tensor.len() != k {
            return Err(CliError::Input(format!(
                "action tensor needs exactly {k} keys"
            )));
        }
        ActionData::new(acting, target, tensor).map_err(|e| CliError::Input(format!("action: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzName {
    Free,
    GroupTimes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduledFile {
    pub index: usize,
    pub support: Vec<usize>,
    pub ansatz: AnsatzName,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub target: AlgebraRef,
    pub schedule: Vec<ScheduledFile>,
    /// `σ` on group indices with `c·g = σ(g)·c`, when the schedule needs it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutation: Option<Vec<usize>>,
}

impl PlanFile {
    pub fn from_plan(p: &SearchPlan) -> Self {
        PlanFile {
            target: AlgebraRef::of(p.target()),
            schedule: p
                .schedule()
                .iter()
                .map(|s| ScheduledFile {
                    index: s.index,
                    support: s.support.clone(),
                    ansatz: match s.ansatz {
                        Ansatz::Free => AnsatzName::Free,
                        Ansatz::GroupTimes => AnsatzName::GroupTimes,
                    },
                })
                .collect(),
            commutation: p.commutation().map(<[usize]>::to_vec),
        }
    }

    pub fn to_plan(&self, h: &Arc<FinDimHopf>) -> Result<SearchPlan, CliError> {
        self.target.check(h, "plan target")?;
        let schedule = self
            .schedule
            .iter()
            .map(|s| ScheduledGenerator {
                index: s.index,
                support: s.support.clone(),
                ansatz: match s.ansatz {
                    AnsatzName::Free => Ansatz::Free,
                    AnsatzName::GroupTimes => Ansatz::GroupTimes,
                },
            })
            .collect();
        SearchPlan::new(h.clone(), schedule, self.commutation.clone())
            .map_err(|e| CliError::Input(format!("plan: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTable {
    pub name: String,
    /// Same layout as an operator matrix.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFile {
    pub algebra: AlgebraRef,
    pub tables: Vec<ExpectedTable>,
}

impl ExpectedFile {
    pub fn from_tables(h: &FinDimHopf, tables: &[(String, LinMap)]) -> Self {
        ExpectedFile {
            algebra: AlgebraRef::of(h),
            tables: tables
                .iter()
                .map(|(name, f)| ExpectedTable {
                    name: name.clone(),
                    matrix: mat_rows(f.matrix()),
                })
                .collect(),
        }
    }

    pub fn to_tables(&self, h: &Arc<FinDimHopf>) -> Result<Vec<(String, LinMap)>, CliError> {
        self.algebra.check(h, "expected tables")?;
        self.tables
            .iter()
            .map(|t| {
                let m = LinMap::new(h.clone(), h.clone(), mat_from_rows(&t.matrix)?)
                    .map_err(|e| CliError::Input(format!("table {}: {e}", t.name)))?;
                Ok((t.name.clone(), m))
            })
            .collect()
    }
}

/// A combination of words: `[["ab", "1"], ["ba", "-1"]]` is `ab − ba`.
pub type WordCombination = Vec<(String, String)>;

/// Maps on free constructions, one combination per basis element of the source.
/// For `diffop-from-hom` the source is the letters and the words live in the
/// tensor algebra; for `mm-check` the source is the Lyndon basis of the free
/// Lie algebra and the words are Lyndon words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiFile {
    pub images: Vec<WordCombination>,
    /// `adjoint` or `trivial`; used by `mm-check` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

/// Letters `a, b, c, …` to indices.
pub fn parse_word(w: &str) -> Result<Vec<usize>, CliError> {
    w.chars()
        .map(|c| {
            if c.is_ascii_lowercase() {
                Ok(c as usize - 'a' as usize)
            } else {
                Err(CliError::Input(format!(
                    "word `{w}` must use letters a, b, c, …"
                )))
            }
        })
        .collect()
}
