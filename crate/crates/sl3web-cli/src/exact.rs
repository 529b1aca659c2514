use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use sl3web::exactmath::{face_type_probability, g_value, green_infinity, h_point, integral_i, pt, ExactValue, GMode, LatticePointEZ};
use sl3web::FaceType;

pub struct Answer {
    pub text: String,
    pub json: Value,
}

fn ints(rest: &str) -> Result<Vec<i64>> {
    rest.replace(['(', ')', ','], " ")
        .split_whitespace()
        .map(|t| t.parse::<i64>().with_context(|| format!("not an integer: {t:?}")))
        .collect()
}

fn points<const K: usize>(rest: &str) -> Result<[LatticePointEZ; K]> {
    let v = ints(rest)?;
    if v.len() != 2 * K {
        bail!("expected {} coordinates, got {}", 2 * K, v.len());
    }
    Ok(std::array::from_fn(|i| pt(v[2 * i], v[2 * i + 1])))
}

fn exact_answer(label: String, v: ExactValue) -> Answer {
    let decimal = v.to_decimal(15);
    Answer { text: format!("{v} ≈ {decimal}"), json: json!({ "query": label, "value": v, "symbolic": v.to_string(), "decimal": decimal }) }
}

/// Answers `Ginf x y`, `h a z`, `g z`, `facetype τ C` or `I m`.
pub fn answer(query: &str, mode: &str) -> Result<Answer> {
    let query = query.trim();
    let (head, rest) = query.split_once(char::is_whitespace).unwrap_or((query, ""));
    match head.to_ascii_lowercase().as_str() {
        "ginf" => {
            let [p] = points::<1>(rest)?;
            Ok(exact_answer(format!("Ginf{p}"), green_infinity(p)))
        }
        "h" => {
            let [a, z] = points::<2>(rest)?;
            Ok(exact_answer(format!("h_{a}{z}"), h_point(a, z)?))
        }
        "i" => {
            let m = ints(rest)?;
            if m.len() != 1 {
                bail!("I takes one integer");
            }
            let v = integral_i(m[0]);
            Ok(Answer { text: format!("{v} ≈ {}", v.to_decimal(15)), json: json!({ "query": format!("I({})", m[0]), "value": v, "symbolic": v.to_string(), "decimal": v.to_decimal(15) }) })
        }
        "g" => {
            let [z] = points::<1>(rest)?;
            let mode = match mode {
                "series" => GMode::Series,
                "quadrature" => GMode::Quadrature,
                other => bail!("unknown mode {other:?}"),
            };
            let g = g_value(z, mode)?;
            Ok(Answer { text: format!("g{z} = {:.12} ± {:.1e}", g.value, g.error), json: json!({ "query": format!("g{z}"), "mode": mode, "result": g }) })
        }
        "facetype" => {
            let t: FaceType = rest.parse().map_err(anyhow::Error::msg)?;
            let p = face_type_probability(&t.tau, t.color)?;
            Ok(Answer { text: format!("P({t}) = {:.12} ± {:.1e}", p.value, p.error), json: json!({ "query": t.to_string(), "face_type": t, "result": p }) })
        }
        other => bail!("unknown query {other:?}; expected Ginf, h, g, facetype or I"),
    }
}
