//! Text formats: weight rows as TSV and cocycle tables as
//! `cocycle <edge-ids> <weight-row> <p>/<q>` lines.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::circle::CircleValue;
use crate::cohomology::CocycleTable;
use crate::error::{Error, Result};
use crate::graph::Cycle;
use crate::space::WeightSpace;

/// One row per admissible weight, doubled values in edge order.
pub fn weights_tsv(space: &WeightSpace) -> String {
    let mut out = String::new();
    for w in space.weights() {
        writeln!(out, "{w}").expect("writing to a string");
    }
    out
}

/// Edge ids of a cycle joined by commas.
pub fn cycle_ids(space: &WeightSpace, cycle: &Cycle) -> String {
    let ids: Vec<&str> = cycle.edges().map(|e| space.graph().edge_id(e)).collect();
    ids.join(",")
}

/// One line per (basis cycle, weight row), basis-major.
pub fn write_cocycle(t: &CocycleTable) -> String {
    let s = t.space();
    let names: Vec<String> = s.homology().basis().iter().map(|c| cycle_ids(s, c)).collect();
    let mut out = String::new();
    for (b, j, v) in t.entries() {
        writeln!(out, "cocycle {} {j} {v}", names[b]).expect("writing to a string");
    }
    out
}

/// Parse a table written by [`write_cocycle`]. Every basis cycle needs a
/// value at every weight row; blank lines and `#` comments are skipped.
pub fn parse_cocycle(space: Arc<WeightSpace>, text: &str) -> Result<CocycleTable> {
    let g = space.genus();
    let n = space.len();
    let mut rows: Vec<Vec<Option<CircleValue>>> = vec![vec![None; n]; g];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [keyword, cycle, row, value] = fields[..] else {
            return Err(bad(format!("expected 4 fields, found {}", fields.len())));
        };
        if keyword != "cocycle" {
            return Err(bad(format!("unknown keyword `{keyword}`")));
        }
        let ids: Vec<&str> = cycle.split(',').filter(|s| !s.is_empty()).collect();
        let cycle = Cycle::from_edge_ids(space.graph(), &ids).map_err(|e| bad(e.to_string()))?;
        let b = space
            .homology()
            .basis()
            .iter()
            .position(|c| *c == cycle)
            .ok_or_else(|| bad(format!("`{}` is not a basis cycle", ids.join(","))))?;
        let j: usize = row.parse().map_err(|_| bad(format!("bad weight row `{row}`")))?;
        if j >= n {
            return Err(bad(format!("weight row {j} out of range (0..{n})")));
        }
        let v: CircleValue = value.parse().map_err(|e: Error| bad(e.to_string()))?;
        if rows[b][j].replace(v).is_some() {
            return Err(bad(format!("duplicate entry for basis cycle {b} and row {j}")));
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(b, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| {
                    v.ok_or_else(|| Error::IncompleteTable(format!("no value for basis cycle {b} at row {j}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CocycleTable::new(space, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::external::construct_external_cocycle;
    use crate::suite;
    use crate::weights::Level;

    fn dumbbell4() -> Arc<WeightSpace> {
        WeightSpace::shared(suite::dumbbell(), Level::new(4).unwrap(), vec![]).unwrap()
    }

    #[test]
    fn cocycle_round_trip() {
        let s = dumbbell4();
        let t = construct_external_cocycle(s.clone()).unwrap();
        let text = write_cocycle(&t);
        assert_eq!(text.lines().count(), 2 * s.len());
        assert!(text.lines().next().unwrap().starts_with("cocycle a 0 "));
        assert!(text.contains(" 1/2\n"));
        assert_eq!(parse_cocycle(s, &text).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        let s = dumbbell4();
        let t = construct_external_cocycle(s.clone()).unwrap();
        let text = write_cocycle(&t);
        let short: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_cocycle(s.clone(), &short),
            Err(Error::IncompleteTable(_))
        ));
        let dup = format!("{text}cocycle a 0 0/1\n");
        assert!(matches!(parse_cocycle(s.clone(), &dup), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_cocycle(s.clone(), "cocycle c 0 0/1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_cocycle(s.clone(), "cocycle a 999 0/1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cocycle(s, "# c\n\ncocycle a 0 x"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn theta_tsv() {
        let s = WeightSpace::shared(suite::theta(), Level::new(2).unwrap(), vec![]).unwrap();
        let tsv = weights_tsv(&s);
        assert_eq!(tsv.lines().count(), 10);
        assert!(tsv.lines().all(|l| l.split('\t').count() == 3));
    }
}
