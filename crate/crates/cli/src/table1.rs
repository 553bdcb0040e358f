//! Rich-vs-cyclic statistics over squarefree isogeny classes: the
//! four-way split (only rich / only cyclic / both / neither) per (q, g),
//! with exact fractions always alongside the rounded percentages.

use num_bigint::BigInt;
use serde::Serialize;

use avfq::arith::IntPoly;
use avfq::weil::{enumerate_elliptic_classes, ClassData, WeilPoly};
use avfq::{Error as CoreError, Result as CoreResult};

use crate::lmfdb::LmfdbClient;

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub q: String,
    pub g: usize,
    pub total: usize,
    pub only_rich: Cell,
    pub only_cyclic: Cell,
    pub both: Cell,
    pub neither: Cell,
    /// Classes drawn from committed fixtures are a subset of the full
    /// population; this is stated in the output.
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub count: usize,
    pub fraction: String,
    pub percent: String,
}

impl Cell {
    fn new(count: usize, total: usize) -> Cell {
        Cell {
            count,
            fraction: format!("{count}/{total}"),
            percent: percent_string(count, total),
        }
    }
}

/// Three significant figures, half-up, on the exact fraction `100*k/t`.
/// Zero prints as "0" and 100 as "100" (matching conventional table style).
pub fn percent_string(k: usize, t: usize) -> String {
    assert!(t > 0);
    if k == 0 {
        return "0".to_string();
    }
    if k == t {
        return "100".to_string();
    }
    // v = 100k/t; choose decimals so that 3 significant digits show.
    let decimals = {
        // integer digits of v: v >= 10 iff 10kt... compare k*10 >= t, k*100 >= t*?
        // v >= 10  <=>  100k >= 10t  <=>  10k >= t
        // v >= 1   <=>  100k >= t
        if 10 * k >= t {
            1
        } else if 100 * k >= t {
            2
        } else {
            3
        }
    };
    // round(100k/t * 10^d + 1/2) via integers: (100k*10^d*2 + t) / (2t)
    let num = BigInt::from(100) * BigInt::from(k) * BigInt::from(10u32).pow(decimals);
    let scaled: BigInt = (num * 2 + BigInt::from(t)) / (BigInt::from(2) * BigInt::from(t));
    let s = scaled.to_string();
    let d = decimals as usize;
    if s.len() <= d {
        let pad = "0".repeat(d - s.len());
        format!("0.{pad}{s}")
    } else {
        let (int_part, frac_part) = s.split_at(s.len() - d);
        format!("{int_part}.{frac_part}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table1Source {
    Builtin,
    Lmfdb,
}

/// Classifies a list of validated squarefree classes into the four cells.
pub fn classify_classes(
    q: &BigInt,
    g: usize,
    classes: &[WeilPoly],
    source: &str,
) -> CoreResult<TableRow> {
    let mut only_rich = 0usize;
    let mut only_cyclic = 0usize;
    let mut both = 0usize;
    let mut neither = 0usize;
    for w in classes {
        let c = ClassData::new(w.clone())?;
        let cyclic = c.cyclic_verdicts()?.value()?;
        let rich = c.rich_verdicts()?.value()?;
        match (rich, cyclic) {
            (true, true) => both += 1,
            (true, false) => only_rich += 1,
            (false, true) => only_cyclic += 1,
            (false, false) => neither += 1,
        }
    }
    let total = classes.len();
    Ok(TableRow {
        q: q.to_string(),
        g,
        total,
        only_rich: Cell::new(only_rich, total),
        only_cyclic: Cell::new(only_cyclic, total),
        both: Cell::new(both, total),
        neither: Cell::new(neither, total),
        source: source.to_string(),
    })
}

/// One (q, g) row. The builtin source enumerates elliptic classes locally
/// and supports g = 1 only; higher genus comes from LMFDB data (or its
/// committed fixture subsets).
pub fn table1_row(
    q: &BigInt,
    g: usize,
    source: Table1Source,
    client: Option<&LmfdbClient>,
    limit: usize,
) -> CoreResult<TableRow> {
    match source {
        Table1Source::Builtin => {
            if g != 1 {
                return Err(CoreError::NotWeil {
                    reason: format!(
                        "builtin enumeration supports g = 1 only (requested g = {g})"
                    ),
                });
            }
            let classes = enumerate_elliptic_classes(q)?;
            classify_classes(q, g, &classes, "builtin")
        }
        Table1Source::Lmfdb => {
            let client = client.expect("lmfdb source needs a client");
            let records = client.fetch(g, q, limit).map_err(|e| CoreError::NotWeil {
                reason: format!("lmfdb fetch failed: {e}"),
            })?;
            let mut classes = Vec::new();
            for rec in records {
                let w = WeilPoly::validate(IntPoly::new(rec.poly.clone()), rec.q.clone())?;
                if w.is_squarefree() {
                    classes.push(w);
                }
            }
            let label = if client.offline {
                "fixtures (committed subset of the full class list)"
            } else {
                "lmfdb"
            };
            classify_classes(q, g, &classes, label)
        }
    }
}

pub fn render_rows(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<6} {:<3} {:>6} | {:>16} {:>16} {:>16} {:>16}\n",
        "F_q", "g", "total", "only rich", "only cyclic", "both", "neither"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<6} {:<3} {:>6} | {:>9}% {:>6} {:>9}% {:>6} {:>9}% {:>6} {:>9}% {:>6}\n",
            format!("F_{}", r.q),
            r.g,
            r.total,
            r.only_rich.percent,
            r.only_rich.fraction,
            r.only_cyclic.percent,
            r.only_cyclic.fraction,
            r.both.percent,
            r.both.fraction,
            r.neither.percent,
            r.neither.fraction,
        ));
    }
    let any_subset = rows.iter().any(|r| r.source.contains("fixtures"));
    if any_subset {
        out.push_str(
            "note: rows marked from fixtures cover the committed subset of classes, \
             not a full LMFDB sweep\n",
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_formatting() {
        assert_eq!(percent_string(0, 5), "0");
        assert_eq!(percent_string(5, 5), "100");
        assert_eq!(percent_string(1, 5), "20.0");
        assert_eq!(percent_string(4, 5), "80.0");
        assert_eq!(percent_string(1, 7), "14.3");
        assert_eq!(percent_string(2, 7), "28.6");
        assert_eq!(percent_string(5, 7), "71.4");
        assert_eq!(percent_string(1, 9), "11.1");
        assert_eq!(percent_string(1, 29), "3.45");
        assert_eq!(percent_string(127, 14663), "0.866");
    }

    #[test]
    fn builtin_g1_rows_match_known_fractions() {
        // F_2: (0, 1/5, 4/5, 0); F_5: (1/9, 1/9, 6/9, 1/9).
        let r2 = table1_row(&BigInt::from(2), 1, Table1Source::Builtin, None, 0).unwrap();
        assert_eq!(
            (r2.only_rich.count, r2.only_cyclic.count, r2.both.count, r2.neither.count),
            (0, 1, 4, 0)
        );
        assert_eq!(r2.total, 5);
        let r5 = table1_row(&BigInt::from(5), 1, Table1Source::Builtin, None, 0).unwrap();
        assert_eq!(
            (r5.only_rich.count, r5.only_cyclic.count, r5.both.count, r5.neither.count),
            (1, 1, 6, 1)
        );
        // Builtin rejects g >= 2.
        assert!(table1_row(&BigInt::from(2), 2, Table1Source::Builtin, None, 0).is_err());
    }
}
