//! The printed multiplication tables and their entry-by-entry comparison with computed
//! products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano_octonion::{split_table, standard_table, Octonion, SplitBasis, SplitOctonion};
use crate::field::{Field, Gaussian, Rational};
use crate::report::Report;

/// Products of imaginary units as printed: `k` is `o_k`, `-k` is `-o_k`, `0` stands for `-1`.
pub const PRINTED_TABLE_O: [[i8; 7]; 7] = [
    [0, 3, -2, 5, -4, 7, -6],
    [-3, 0, 1, 6, -7, -4, 5],
    [2, -1, 0, -7, -6, 5, 4],
    [-5, -6, 7, 0, 1, 2, -3],
    [4, 7, 6, -1, 0, -3, -2],
    [-7, 4, -5, -2, 3, 0, 1],
    [6, -5, -4, 3, 2, -1, 0],
];

/// Products of `t, u1, u2, u3, v1, v2, v3` as printed, with `w = 2 + 2t`.
pub const PRINTED_TABLE_SO: [[&str; 7]; 7] = [
    ["1", "u1", "u2", "u3", "-v1", "-v2", "-v3"],
    ["-u1", "0", "-2v3", "-2v2", "-w", "0", "0"],
    ["-u2", "2v3", "0", "2v1", "0", "-w", "0"],
    ["-u3", "2v2", "-2v1", "0", "0", "0", "-w"],
    ["v1", "w", "0", "0", "0", "2u3", "-2u2"],
    ["v2", "0", "w", "0", "-2u3", "0", "2u1"],
    ["v3", "0", "0", "w", "2u2", "-2u1", "0"],
];

pub const SPLIT_NAMES: [&str; 7] = ["t", "u1", "u2", "u3", "v1", "v2", "v3"];

pub fn printed_o_entry<F: Field>(r: usize, s: usize) -> Octonion<F> {
    let e = PRINTED_TABLE_O[r][s];
    if e == 0 {
        Octonion::scalar(-F::one())
    } else {
        let o = Octonion::unit0(e.unsigned_abs() as usize - 1);
        if e < 0 {
            o.neg()
        } else {
            o
        }
    }
}

/// Parses a printed entry such as `-2v3`, `w` or `0`.
pub fn parse_split_entry<F: Field>(s: &str) -> Result<SplitOctonion<F>> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-F::one(), r),
        None => (F::one(), s),
    };
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let sym = &rest[digits.len()..];
    let coef = if digits.is_empty() || sym.is_empty() {
        F::one()
    } else {
        F::from_i64(digits.parse().map_err(|_| Error::Parse(s.to_string()))?)
    };
    let c = sign * coef;
    let mut out = SplitOctonion {
        coeffs: std::array::from_fn(|_| F::zero()),
    };
    let basis = |name: &str| SplitBasis::ALL.iter().copied().find(|b| b.name() == name);
    match sym {
        "" => {
            let n: i64 = digits.parse().map_err(|_| Error::Parse(s.to_string()))?;
            out.coeffs[0] = c * F::from_i64(n);
        }
        "w" => {
            out.coeffs[0] = c.clone() * F::from_i64(2);
            out.coeffs[1] = c * F::from_i64(2);
        }
        name => {
            let b = basis(name).ok_or_else(|| Error::Parse(s.to_string()))?;
            out.coeffs[b.index()] = c;
        }
    }
    Ok(out)
}

/// One disagreement between a printed entry and the computed product.
#[derive(Clone, Debug, Serialize)]
pub struct TableMismatch {
    pub row: String,
    pub col: String,
    pub printed: String,
    pub computed: String,
}

pub fn table_o_mismatches() -> Vec<TableMismatch> {
    let computed = standard_table::<Rational>();
    let mut out = Vec::new();
    for r in 0..7 {
        for s in 0..7 {
            let printed = printed_o_entry::<Rational>(r, s);
            if printed != computed[r][s] {
                out.push(TableMismatch {
                    row: format!("o{}", r + 1),
                    col: format!("o{}", s + 1),
                    printed: printed.to_string(),
                    computed: computed[r][s].to_string(),
                });
            }
        }
    }
    out
}

pub fn table_so_mismatches() -> Result<Vec<TableMismatch>> {
    let computed = split_table::<Gaussian>()?;
    let mut out = Vec::new();
    for r in 0..7 {
        for s in 0..7 {
            let printed = parse_split_entry::<Gaussian>(PRINTED_TABLE_SO[r][s])?;
            if printed != computed[r][s] {
                out.push(TableMismatch {
                    row: SPLIT_NAMES[r].into(),
                    col: SPLIT_NAMES[s].into(),
                    printed: PRINTED_TABLE_SO[r][s].into(),
                    computed: computed[r][s].to_string(),
                });
            }
        }
    }
    Ok(out)
}

fn describe(m: &[TableMismatch]) -> String {
    if m.is_empty() {
        return "all 49 entries agree".into();
    }
    m.iter()
        .map(|x| format!("{}*{}: printed {}, computed {}", x.row, x.col, x.printed, x.computed))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn tables_check() -> Result<Report> {
    let mut report = Report::new("tables");
    let o = table_o_mismatches();
    report.push("standard", o.is_empty(), "the printed table of o_i o_j matches the product", describe(&o));
    let so = table_so_mismatches()?;
    report.push("split", so.is_empty(), "the printed table in the basis t, u_m, v_m matches the product", describe(&so));
    Ok(report)
}

/// A table as JSON: standard entries are octonion coordinate strings, split entries are
/// `{"re","im"}` pairs in the split basis.
pub fn table_json(split: bool) -> Result<serde_json::Value> {
    if split {
        let t = split_table::<Gaussian>()?;
        Ok(serde_json::json!({
            "basis": SPLIT_NAMES,
            "coordinates": ["1", "t", "u1", "u2", "u3", "v1", "v2", "v3"],
            "entries": t.iter().map(|row| row.iter().map(|e| e.coeffs.iter().map(Field::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }))
    } else {
        let t = standard_table::<Rational>();
        Ok(serde_json::json!({
            "basis": ["o1", "o2", "o3", "o4", "o5", "o6", "o7"],
            "coordinates": ["1", "o1", "o2", "o3", "o4", "o5", "o6", "o7"],
            "entries": t.iter().map(|row| row.iter().map(|e| e.coeffs.iter().map(Field::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }))
    }
}
