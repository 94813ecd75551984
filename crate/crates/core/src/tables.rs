//! Golden tables of reduced `x^k` and `f_j`, compared term by term with the recursion.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::brown_gitler::{power_table, BgTable};
use crate::error::{Error, Result};
use crate::ring::{Monomial, RingElement, RingId};

pub const TABLE1: &str = include_str!("../../../tables/table1.txt");
pub const TABLE2: &str = include_str!("../../../tables/table2.txt");

/// One printed row `label = expression`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub index: u64,
    pub printed: RingElement,
}

/// Parses rows such as `x^{10} = ...` or `f_7 = ...`.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.trim();
        if !body.is_empty() {
            let (label, expr) = body.split_once('=').ok_or_else(|| Error::Parse {
                position: offset,
                message: "expected `label = expression`".into(),
            })?;
            let label = label.trim();
            let digits: String = label.chars().filter(char::is_ascii_digit).collect();
            let index = digits.parse().map_err(|_| Error::Parse {
                position: offset,
                message: format!("row label `{label}` has no index"),
            })?;
            let expr_start = offset + line.find('=').unwrap_or(0) + 1;
            let printed = RingElement::parse(expr, RingId::R).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position: expr_start + position,
                    message,
                },
                other => other,
            })?;
            rows.push(TableRow {
                label: label.to_string(),
                index,
                printed,
            });
        }
        offset += line.len();
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub label: String,
    pub printed: RingElement,
    pub computed: RingElement,
}

impl RowCheck {
    pub fn matches(&self) -> bool {
        self.printed == self.computed
    }

    /// `(monomial, printed coefficient, computed coefficient)` where they differ.
    pub fn diff(&self) -> Vec<(Monomial, BigInt, BigInt)> {
        let keys: BTreeSet<Monomial> = self
            .printed
            .terms()
            .keys()
            .chain(self.computed.terms().keys())
            .copied()
            .collect();
        keys.into_iter()
            .filter_map(|m| {
                let p = self.printed.terms().get(&m).cloned().unwrap_or_default();
                let c = self.computed.terms().get(&m).cloned().unwrap_or_default();
                (p != c).then_some((m, p, c))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(RowCheck::matches)
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            if r.matches() {
                writeln!(f, "{:<8} ok", r.label)?;
            } else {
                writeln!(f, "{:<8} differs", r.label)?;
                for (m, p, c) in r.diff() {
                    writeln!(f, "    {m}: printed {p}, computed {c}")?;
                }
            }
        }
        Ok(())
    }
}

/// Checks the `x^k` table against `pow(x, k)`.
pub fn check_power_table(text: &str) -> Result<TableReport> {
    let rows = parse_table(text)?;
    let k_max = rows.iter().map(|r| r.index).max().unwrap_or(3).max(3) as u32;
    let powers = power_table(k_max);
    let x = RingElement::x(RingId::R);
    Ok(TableReport {
        rows: rows
            .into_iter()
            .map(|r| {
                let computed = powers
                    .iter()
                    .find(|(k, _)| *k as u64 == r.index)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| x.pow(r.index as u32));
                RowCheck {
                    label: r.label,
                    printed: r.printed,
                    computed,
                }
            })
            .collect(),
    })
}

/// Checks the `f_j` table against the recursion.
pub fn check_bg_table(text: &str) -> Result<TableReport> {
    let mut table = BgTable::new(RingId::R);
    Ok(TableReport {
        rows: parse_table(text)?
            .into_iter()
            .map(|r| RowCheck {
                computed: table.get(r.index),
                label: r.label,
                printed: r.printed,
            })
            .collect(),
    })
}
