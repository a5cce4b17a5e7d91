use alloc::string::String;
use alloc::vec::Vec;

use crate::exactlin::Rat;
use crate::hopf::LinMap;

use super::ClassificationResult;

/// One differing matrix entry between a computed operator and its closest
/// expected table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDiff {
    pub table: String,
    /// Basis element whose image differs.
    pub column: usize,
    /// Coordinate of that image.
    pub row: usize,
    pub expected: Rat,
    pub computed: Rat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PublishedDiff {
    /// Expected tables matched exactly.
    pub matched: Vec<String>,
    /// Expected tables with no computed counterpart.
    pub missing: Vec<String>,
    /// Positions in `result.operators` with no expected counterpart.
    pub unexpected: Vec<usize>,
    /// For each missing table, the entries where it differs from the nearest
    /// unmatched computed operator.
    pub entries: Vec<EntryDiff>,
}

impl PublishedDiff {
    pub fn is_equal(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

fn differing(a: &LinMap, b: &LinMap) -> Vec<(usize, usize)> {
    let (ma, mb) = (a.matrix(), b.matrix());
    if ma.rows() != mb.rows() || ma.cols() != mb.cols() {
        return (0..ma.cols().max(mb.cols())).map(|c| (0, c)).collect();
    }
    let mut out = Vec::new();
    for c in 0..ma.cols() {
        for r in 0..ma.rows() {
            if ma[(r, c)] != mb[(r, c)] {
                out.push((r, c));
            }
        }
    }
    out
}

/// Set equality of computed and expected operators, reported entry by entry.
pub fn verify_against_published(
    result: &ClassificationResult,
    expected: &[(String, LinMap)],
) -> PublishedDiff {
    let mut diff = PublishedDiff::default();
    let mut used = alloc::vec![false; result.operators.len()];
    let mut missing = Vec::new();
    for (name, table) in expected {
        match result
            .operators
            .iter()
            .enumerate()
            .position(|(i, op)| !used[i] && op.map() == table)
        {
            Some(i) => {
                used[i] = true;
                diff.matched.push(name.clone());
            }
            None => missing.push((name, table)),
        }
    }
    for (name, table) in missing {
        diff.missing.push(name.clone());
        let nearest = (0..result.operators.len())
            .filter(|&i| !used[i])
            .map(|i| differing(result.operators[i].map(), table))
            .min_by_key(Vec::len);
        if let Some(cells) = nearest {
            let i = (0..result.operators.len())
                .filter(|&i| !used[i])
                .find(|&i| differing(result.operators[i].map(), table) == cells)
                .expect("nearest exists");
            let computed = result.operators[i].map().matrix();
            for (row, column) in cells {
                diff.entries.push(EntryDiff {
                    table: name.clone(),
                    column,
                    row,
                    expected: if row < table.matrix().rows() && column < table.matrix().cols() {
                        table.matrix()[(row, column)].clone()
                    } else {
                        Rat::zero()
                    },
                    computed: if row < computed.rows() && column < computed.cols() {
                        computed[(row, column)].clone()
                    } else {
                        Rat::zero()
                    },
                });
            }
        }
    }
    diff.unexpected = (0..result.operators.len()).filter(|&i| !used[i]).collect();
    diff
}
