//! Browser bindings: octonion products, normal forms in `A`, and Hilbert series of
//! quotients of `A` by linear forms.

use wasm_bindgen::prelude::*;

use octalg::fano_octonion::Octonion;
use octalg::field::{parse_scalar, Rational};
use octalg::parse::parse_poly;
use octalg::rewrite::quotient_hilbert;
use octalg::series::hilbert_a;
use octalg::suites::normal_form_text;

fn parse_octonion(src: &str) -> Result<Octonion<Rational>, String> {
    let coords: Vec<Rational> = src
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_scalar::<Rational>(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let coeffs: [Rational; 8] = coords
        .try_into()
        .map_err(|v: Vec<Rational>| format!("expected 8 coordinates (1, o1..o7), got {}", v.len()))?;
    Ok(Octonion::new(coeffs))
}

/// Product of two octonions given by their coordinates in `1, o1, ..., o7`.
pub fn product_text(a: &str, b: &str) -> Result<String, String> {
    Ok(parse_octonion(a)?.mul(&parse_octonion(b)?).to_string())
}

pub fn normal_form_of(expr: &str) -> Result<String, String> {
    normal_form_text(expr).map(|p| p.to_string()).map_err(|e| e.to_string())
}

/// Hilbert coefficients of `A` modulo comma-separated linear forms (none for `A` itself).
pub fn hilbert_text(forms: &str, n: usize) -> Result<String, String> {
    let n = n.min(12);
    let forms: Vec<Vec<Rational>> = forms
        .split(',')
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .map(|f| {
            let p = parse_poly::<Rational>(f).map_err(|e| e.to_string())?;
            if p.degree() != Some(1) || !p.is_homogeneous() {
                return Err(format!("'{f}' is not a linear form"));
            }
            Ok(p.coefficient_vector(1, 7))
        })
        .collect::<Result<_, _>>()?;
    let coeffs: Vec<String> = if forms.is_empty() {
        hilbert_a(n).to_strings()
    } else {
        quotient_hilbert(&forms, n)
            .map_err(|e| e.to_string())?
            .coeffs
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    Ok(coeffs.join(" "))
}

#[wasm_bindgen]
pub fn octonion_product(a: &str, b: &str) -> Result<String, JsValue> {
    product_text(a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn normal_form(expr: &str) -> Result<String, JsValue> {
    normal_form_of(expr).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hilbert(forms: &str, n: usize) -> Result<String, JsValue> {
    hilbert_text(forms, n).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let o3 = Octonion::<Rational>::unit(3).unwrap();
        assert_eq!(product_text("0 1 0 0 0 0 0 0", "0,0,1,0,0,0,0,0").unwrap(), o3.to_string());
        assert_eq!(product_text("0 0 1 0 0 0 0 0", "0 1 0 0 0 0 0 0").unwrap(), o3.neg().to_string());
        assert_eq!(product_text("0 1/2 0 0 0 0 0 0", "0 2 0 0 0 0 0 0").unwrap(), "-1");
        assert!(product_text("1 2", "0 0 0 0 0 0 0 0").is_err());
    }

    #[test]
    fn normal_forms_and_series() {
        assert_eq!(normal_form_of("x7*x1 - x7*x1").unwrap(), "0");
        assert!(normal_form_of("x9").is_err());
        assert_eq!(hilbert_text("", 4).unwrap(), "1 7 42 246 1435");
        assert_eq!(hilbert_text("x7", 3).unwrap(), "1 6 29 134");
        assert!(hilbert_text("x1*x2", 3).is_err());
    }
}
