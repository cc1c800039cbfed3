//! CSV formats.
//!
//! * matches: header `i,j,wins`, one row per ordered pair; duplicate rows sum.
//! * ties: header `i,j,ties`, one row per unordered pair; duplicates rejected.
//! * ranking: header `rank,id,pi,score,p1`, strongest first.
//!
//! Lines starting with `#` are comments. Floats are written with 17
//! significant digits; integral counts are written as integers.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{p1, ComparisonData, Strengths};

pub const MATCH_HEADER: [&str; 3] = ["i", "j", "wins"];
pub const TIE_HEADER: [&str; 3] = ["i", "j", "ties"];

type Row = (String, String, f64);

fn parse_err(path: &str, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

fn read_rows<R: Read>(reader: R, path: &str, header: [&str; 3]) -> Result<Vec<(u64, Row)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let head = rdr
        .headers()
        .map_err(|e| parse_err(path, 1, e.to_string()))?
        .clone();
    if head.iter().collect::<Vec<_>>() != header {
        return Err(parse_err(
            path,
            1,
            format!("expected header `{}`, found `{}`", header.join(","), head.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(path, line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != 3 {
            return Err(parse_err(path, line, format!("expected 3 fields, found {}", rec.len())));
        }
        let (a, b) = (rec[0].to_string(), rec[1].to_string());
        if a.is_empty() || b.is_empty() {
            return Err(parse_err(path, line, "empty player id"));
        }
        let count: f64 = rec[2]
            .parse()
            .map_err(|_| parse_err(path, line, format!("`{}` is not a number", &rec[2])))?;
        let located = |source: Error| Error::Located {
            path: path.to_string(),
            line,
            source: Box::new(source),
        };
        if a == b {
            return Err(located(Error::SelfMatch(a)));
        }
        if !count.is_finite() || count < 0.0 {
            return Err(located(Error::NegativeCount { i: a, j: b, count }));
        }
        rows.push((line, (a, b, count)));
    }
    Ok(rows)
}

/// Reads a matches CSV and an optional ties CSV into comparison data.
pub fn read_comparisons<R: Read, T: Read>(
    matches: R,
    matches_name: &str,
    ties: Option<(T, &str)>,
) -> Result<ComparisonData> {
    let wins: Vec<Row> = read_rows(matches, matches_name, MATCH_HEADER)?
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    let mut tie_rows = Vec::new();
    if let Some((reader, name)) = ties {
        let mut seen = BTreeSet::new();
        for (line, (a, b, c)) in read_rows(reader, name, TIE_HEADER)? {
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !seen.insert(key) {
                return Err(parse_err(
                    name,
                    line,
                    format!("duplicate tie row for pair ({a}, {b})"),
                ));
            }
            tie_rows.push((a, b, c));
        }
    }
    if wins.is_empty() && tie_rows.is_empty() {
        return Err(Error::InvalidData(format!("{matches_name}: no comparisons")));
    }
    ComparisonData::from_named(wins, tie_rows)
}

/// Reads comparison data from a matches file and optional ties file.
pub fn parse_matches(matches: &Path, ties: Option<&Path>) -> Result<ComparisonData> {
    let open = |p: &Path| {
        File::open(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
    };
    let m = open(matches)?;
    let name = matches.display().to_string();
    match ties {
        Some(tp) => {
            let t = open(tp)?;
            let tname = tp.display().to_string();
            read_comparisons(m, &name, Some((t, tname.as_str())))
        }
        None => read_comparisons(m, &name, None::<(File, &str)>),
    }
}

/// 17 significant digits, exact for double precision.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        format!("{}", x as i64)
    } else {
        fmt_f64(x)
    }
}

pub fn matches_csv(data: &ComparisonData) -> String {
    let mut out = String::from("i,j,wins\n");
    for (i, j, w) in data.wins() {
        out.push_str(&format!("{},{},{}\n", data.ids()[i], data.ids()[j], fmt_count(w)));
    }
    out
}

/// Ties with each pair in lexicographic order (which is index order).
pub fn ties_csv(data: &ComparisonData) -> String {
    let mut out = String::from("i,j,ties\n");
    for (i, j, t) in data.ties() {
        out.push_str(&format!("{},{},{}\n", data.ids()[i], data.ids()[j], fmt_count(t)));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingRow {
    pub rank: usize,
    pub id: String,
    pub pi: f64,
    pub score: f64,
    pub p1: f64,
}

/// Players sorted by strength, descending; equal strengths ordered by id.
pub fn ranking(data: &ComparisonData, strengths: &Strengths) -> Vec<RankingRow> {
    let mut order: Vec<usize> = (0..data.n_players()).collect();
    order.sort_by(|&a, &b| {
        strengths.pi[b]
            .total_cmp(&strengths.pi[a])
            .then_with(|| data.ids()[a].cmp(&data.ids()[b]))
    });
    order
        .into_iter()
        .enumerate()
        .map(|(k, i)| {
            let pi = strengths.pi[i];
            RankingRow {
                rank: k + 1,
                id: data.ids()[i].clone(),
                pi,
                score: pi.ln(),
                p1: p1(pi),
            }
        })
        .collect()
}

pub fn ranking_csv(data: &ComparisonData, strengths: &Strengths) -> String {
    let mut out = String::from("rank,id,pi,score,p1\n");
    for r in ranking(data, strengths) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.rank,
            r.id,
            fmt_f64(r.pi),
            fmt_f64(r.score),
            fmt_f64(r.p1)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(matches: &str, ties: Option<&str>) -> Result<ComparisonData> {
        read_comparisons(matches.as_bytes(), "m.csv", ties.map(|t| (t.as_bytes(), "t.csv")))
    }

    #[test]
    fn basic_rows() {
        let d = read("i,j,wins\na,b,3\nb,a,1\n", None).unwrap();
        assert_eq!(d.n_players(), 2);
        assert_eq!(d.win(0, 1), 3.0);
        assert_eq!(d.win(1, 0), 1.0);
        assert_eq!(d.total_games(), 4.0);
    }

    #[test]
    fn duplicate_rows_sum() {
        let d = read("i,j,wins\na,b,2\n# comment\na,b,1\nb,a,0.5\n", None).unwrap();
        assert_eq!(d.win(0, 1), 3.0);
        assert_eq!(d.win(1, 0), 0.5);
    }

    #[test]
    fn self_match_reports_line() {
        match read("i,j,wins\na,b,1\na,a,1\n", None) {
            Err(Error::Located { line, source, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(*source, Error::SelfMatch("a".into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_rows() {
        assert!(matches!(
            read("i,j,wins\na,b,-2\n", None),
            Err(Error::Located { line: 2, .. })
        ));
        assert!(matches!(read("i,j,wins\na,b,x\n", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read("a,b,wins\na,b,1\n", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read("i,j,wins\na,b\n", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read("i,j,wins\n", None), Err(Error::InvalidData(_))));
    }

    #[test]
    fn ties_file() {
        let d = read("i,j,wins\na,b,1\n", Some("i,j,ties\nc,a,2\na,b,1\n")).unwrap();
        assert_eq!(d.ids(), &["a", "b", "c"]);
        assert_eq!(d.tie(0, 2), 2.0);
        assert_eq!(d.tie(1, 0), 1.0);
        let dup = read("i,j,wins\na,b,1\n", Some("i,j,ties\na,b,1\nb,a,1\n"));
        assert!(matches!(dup, Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn ranking_order_and_columns() {
        let d = read("i,j,wins\na,b,3\nb,a,1\nc,a,1\na,c,1\n", None).unwrap();
        let s = Strengths::new(vec![2.0, 0.5, 0.5]);
        let rows = ranking(&d, &s);
        assert_eq!(rows.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(rows[2].rank, 3);
        let csv = ranking_csv(&d, &s);
        assert!(csv.starts_with("rank,id,pi,score,p1\n1,a,2.0000000000000000e0,"));
        let line: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(line[3].parse::<f64>().unwrap(), 2f64.ln());
        assert_eq!(line[4].parse::<f64>().unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn writers_round_trip() {
        let src = "i,j,wins\na,b,3\nb,a,0.1\n";
        let d = read(src, Some("i,j,ties\na,b,2\n")).unwrap();
        let again = read(&matches_csv(&d), Some(&ties_csv(&d))).unwrap();
        assert_eq!(d, again);
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
