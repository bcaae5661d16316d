//! Froyshov tables over explicit triples or the standard Brieskorn families,
//! with JSON, CSV and LaTeX output.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::par::Execution;
use crate::swfloer::{froyshov_row, FroyshovRow};

/// The one-parameter families of Brieskorn spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `(2, 3, 6k+1)`
    SixKPlusOne,
    /// `(2, 3, 6k−1)`
    SixKMinusOne,
    /// `(2, 4k+1, 4k+3)`
    FourK,
    /// `(3, 3k+1, 3k+2)`
    ThreeK,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SixKPlusOne, Family::SixKMinusOne, Family::FourK, Family::ThreeK];

    pub fn triple(self, k: i64) -> (i64, i64, i64) {
        match self {
            Family::SixKPlusOne => (2, 3, 6 * k + 1),
            Family::SixKMinusOne => (2, 3, 6 * k - 1),
            Family::FourK => (2, 4 * k + 1, 4 * k + 3),
            Family::ThreeK => (3, 3 * k + 1, 3 * k + 2),
        }
    }

    fn pattern(self) -> &'static str {
        match self {
            Family::SixKPlusOne => "2,3,6k+1",
            Family::SixKMinusOne => "2,3,6k-1",
            Family::FourK => "2,4k+1,4k+3",
            Family::ThreeK => "3,3k+1,3k+2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pattern())
    }
}

impl FromStr for Family {
    type Err = ParseError;

    /// Accepts the patterns above, with any single letter as the parameter
    /// and `−` for `-`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        let var = cleaned.chars().find(|c| c.is_ascii_alphabetic());
        let Some(var) = var else {
            return Err(ParseError::new(s, 0, "family needs a parameter such as k"));
        };
        let normalized = cleaned.replace(var, "k");
        for fam in Family::ALL {
            if normalized == fam.pattern() {
                return Ok(fam);
            }
        }
        // point at the first component that fails to match any family
        let parts: Vec<&str> = normalized.split(',').collect();
        let mut offset = 0;
        for (i, part) in parts.iter().enumerate() {
            if !Family::ALL.iter().any(|f| f.pattern().split(',').nth(i) == Some(*part)) {
                return Err(ParseError::new(s, offset, "unknown family; expected 2,3,6k+1 / 2,3,6k-1 / 2,4k+1,4k+3 / 3,3k+1,3k+2"));
            }
            offset += part.len() + 1;
        }
        Err(ParseError::new(s, 0, "unknown family; expected 2,3,6k+1 / 2,3,6k-1 / 2,4k+1,4k+3 / 3,3k+1,3k+2"))
    }
}

/// `a..b` or `a..=b`, both inclusive, or a single integer.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, ParseError> {
    let t = s.trim();
    let num = |text: &str, at: usize| {
        text.trim()
            .parse::<i64>()
            .map_err(|_| ParseError::new(s, at, "expected an integer"))
    };
    match t.split_once("..") {
        Some((lo, hi)) => {
            let hi_at = lo.len() + 2;
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo, 0)?, num(hi, hi_at)?);
            if lo > hi {
                return Err(ParseError::new(s, 0, "empty range"));
            }
            Ok(lo..=hi)
        }
        None => {
            let k = num(t, 0)?;
            Ok(k..=k)
        }
    }
}

/// `a,b,c`.
pub fn parse_triple(s: &str) -> std::result::Result<(i64, i64, i64), ParseError> {
    let mut out = [0i64; 3];
    let mut offset = 0;
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(ParseError::new(s, s.len(), "expected three comma-separated integers"));
    }
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| ParseError::new(s, offset, "expected an integer"))?;
        offset += part.len() + 1;
    }
    Ok((out[0], out[1], out[2]))
}

/// Rows of `(a, b, c), F, 8m, Z, P`, in input order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<FroyshovRow>,
}

impl Report {
    pub fn from_triples(triples: &[(i64, i64, i64)], exec: Execution) -> Result<Self> {
        let rows = exec
            .map(triples, |&(a, b, c)| froyshov_row(a, b, c, Execution::Sequential))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let report = Report { rows };
        report.check()?;
        Ok(report)
    }

    pub fn from_family(family: Family, ks: RangeInclusive<i64>, exec: Execution) -> Result<Self> {
        if *ks.start() < 1 {
            return Err(Error::InvalidSeifert(format!("family index must start at 1, got {}", ks.start())));
        }
        let triples: Vec<_> = ks.map(|k| family.triple(k)).collect();
        Self::from_triples(&triples, exec)
    }

    /// `Z = 8m + F` on every row.
    pub fn check(&self) -> Result<()> {
        for row in &self.rows {
            if row.z != &row.f + row.eight_m {
                return Err(Error::Invariant(format!("row {:?}: Z != 8m + F", row.triple)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report rows serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["a", "b", "c", "F", "eight_m", "Z", "P"]).expect("in-memory write");
        for r in &self.rows {
            let (a, b, c) = r.triple;
            w.write_record([
                a.to_string(),
                b.to_string(),
                c.to_string(),
                r.f.to_string(),
                r.eight_m.to_string(),
                r.z.to_string(),
                r.p.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{||c|c|c|c||} \\hline\n");
        out.push_str("$(a,b,c)$ & {\\bf F} & $8m$ & $Z$ \\\\ \\hline\\hline\n");
        for r in &self.rows {
            let (a, b, c) = r.triple;
            out.push_str(&format!("$({a},{b},{c})$ & ${}$ & ${}$ & ${}$ \\\\ \\hline\n", r.f, r.eight_m, r.z));
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    /// The `Σ(a,b,c) & P = …` array of Poincaré polynomials.
    pub fn to_latex_polynomials(&self) -> String {
        let mut out = String::from("\\begin{array}{ll}\n");
        for r in &self.rows {
            let (a, b, c) = r.triple;
            out.push_str(&format!("\\Sigma({a},{b},{c}) & P = {} \\\\\n", r.p.to_latex()));
        }
        out.push_str("\\end{array}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn family_grammar() {
        assert_eq!("2,3,6k+1".parse::<Family>().unwrap(), Family::SixKPlusOne);
        assert_eq!("2, 3, 6k−1".parse::<Family>().unwrap(), Family::SixKMinusOne);
        assert_eq!("2,4k+1,4k+3".parse::<Family>().unwrap(), Family::FourK);
        assert_eq!("3,3s+1,3s+2".parse::<Family>().unwrap(), Family::ThreeK);
        let e = "2,5,6k+1".parse::<Family>().unwrap_err();
        assert_eq!(e.position, 2);
        assert!("2,3,7".parse::<Family>().is_err());
        assert_eq!(Family::FourK.triple(2), (2, 9, 11));
        assert_eq!(Family::ThreeK.to_string(), "3,3k+1,3k+2");
    }

    #[test]
    fn ranges_and_triples() {
        assert_eq!(parse_range("1..50").unwrap(), 1..=50);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert_eq!(parse_range("1..x").unwrap_err().position, 3);
        assert!(parse_range("5..1").is_err());
        assert_eq!(parse_triple("2,3,5").unwrap(), (2, 3, 5));
        assert_eq!(parse_triple("2,x,5").unwrap_err().position, 2);
        assert!(parse_triple("2,3").is_err());
    }

    #[test]
    fn table_rows() {
        let r = Report::from_triples(&[(2, 3, 5), (2, 3, 7), (5, 7, 9)], Execution::best()).unwrap();
        let cols: Vec<_> = r.rows.iter().map(|x| (x.f.clone(), x.eight_m, x.z.clone())).collect();
        assert_eq!(cols, vec![(q!(8), 0, q!(8)), (q!(-8), 8, q!(0)), (q!(0), 0, q!(0))]);
        let empty = Report::from_triples(&[], Execution::best()).unwrap();
        assert!(empty.rows.is_empty());
    }

    #[test]
    fn emitters() {
        let r = Report::from_triples(&[(2, 3, 7)], Execution::Sequential).unwrap();
        let json = r.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(json.contains("\"F\": \"-8\""));
        assert_eq!(r.to_csv(), "a,b,c,F,eight_m,Z,P\n2,3,7,-8,8,0,T^-1\n");
        assert!(r.to_latex().contains("$(2,3,7)$ & $-8$ & $8$ & $0$ \\\\ \\hline"));
        assert_eq!(
            r.to_latex_polynomials(),
            "\\begin{array}{ll}\n\\Sigma(2,3,7) & P = T^{-1} \\\\\n\\end{array}\n"
        );
    }

    #[test]
    fn family_report() {
        let r = Report::from_family(Family::SixKPlusOne, 1..=3, Execution::best()).unwrap();
        assert!(r.rows.iter().all(|x| x.z == 0));
        assert!(Report::from_family(Family::SixKPlusOne, 0..=3, Execution::best()).is_err());
    }
}
