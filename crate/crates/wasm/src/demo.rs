//! JSON request/response layer shared by the wasm exports and the native
//! unit tests.

use serde_json::{json, Value};

use nsmac_core::alcove;
use nsmac_core::cartan_weyl::{
    build_root_datum, enumerate_minimal_reps, CartanType, RootDatum, Weight, WeylElt,
};
use nsmac_core::charpoly::{self, GradedChar};
use nsmac_core::ospath;
use nsmac_core::qbg::build_qbg;
use nsmac_core::qls::{self, QlsContext};

fn err(msg: impl std::fmt::Display) -> String {
    json!({"error": msg.to_string()}).to_string()
}

struct Request {
    datum: RootDatum,
    lambda: Weight,
}

fn parse_request(request: &str) -> Result<(Request, Value), String> {
    let value: Value =
        serde_json::from_str(request).map_err(|e| err(format!("bad request JSON: {e}")))?;
    let ctype = value["type"]
        .as_str()
        .ok_or_else(|| err("missing \"type\""))?;
    let ctype = CartanType::parse(ctype).map_err(err)?;
    let datum = build_root_datum(ctype);
    let coords: Vec<i64> = value["lambda"]
        .as_array()
        .ok_or_else(|| err("missing \"lambda\" array"))?
        .iter()
        .map(|v| {
            v.as_i64()
                .ok_or_else(|| err("lambda entries must be integers"))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != datum.rank() {
        return Err(err(format!(
            "lambda must have {} coordinates",
            datum.rank()
        )));
    }
    let lambda = Weight::new(coords);
    if !lambda.is_dominant() {
        return Err(err("lambda must be dominant"));
    }
    Ok((Request { datum, lambda }, value))
}

fn all_models(
    datum: &RootDatum,
    lambda: &Weight,
    w: &WeylElt,
) -> Result<(GradedChar, Option<String>), String> {
    let ctx = QlsContext::new(datum, lambda.clone()).map_err(err)?;
    let via_qls = qls::gch_qls(&ctx, w).map_err(err)?;
    let via_alcove = alcove::macdonald_alcove(datum, w, lambda, None).map_err(err)?;
    let via_os = ospath::macdonald_os(datum, w, lambda, None).map_err(err)?;
    let via_dem = charpoly::macdonald_recursive(datum, w, lambda).map_err(err)?;
    for (name, poly) in [
        ("alcove", &via_alcove),
        ("os", &via_os),
        ("demazure", &via_dem),
    ] {
        if poly != &via_qls {
            let (wt, q, a, b) = via_qls.first_difference(poly).expect("differs");
            return Ok((
                via_qls,
                Some(format!(
                    "qls vs {name}: term x^{wt:?} q^{q} has coefficient {a} vs {b}"
                )),
            ));
        }
    }
    Ok((via_qls, None))
}

pub fn compute_json(request: &str) -> String {
    let (req, value) = match parse_request(request) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let w_str = value["w"].as_str().unwrap_or("e");
    let parsed = match WeylElt::parse(&req.datum, w_str) {
        Ok(w) => w,
        Err(e) => return err(e),
    };
    let j = req.datum.j_of_weight(&req.lambda);
    let w = parsed.min_coset_rep(&req.datum, &j);
    let canonicalized = w != parsed;
    let model = value["model"].as_str().unwrap_or("all");
    let result = match model {
        "qls" => QlsContext::new(&req.datum, req.lambda.clone())
            .and_then(|ctx| qls::gch_qls(&ctx, &w))
            .map_err(err),
        "alcove" => alcove::macdonald_alcove(&req.datum, &w, &req.lambda, None).map_err(err),
        "os" => ospath::macdonald_os(&req.datum, &w, &req.lambda, None).map_err(err),
        "demazure" => {
            charpoly::macdonald_recursive(&req.datum, &w, &req.lambda).map_err(err)
        }
        "all" => match all_models(&req.datum, &req.lambda, &w) {
            Ok((poly, None)) => Ok(poly),
            Ok((_, Some(mismatch))) => Err(err(format!("model mismatch: {mismatch}"))),
            Err(e) => Err(e),
        },
        other => Err(err(format!("unknown model `{other}`"))),
    };
    match result {
        Ok(poly) => json!({
            "type": req.datum.cartan_type().to_string(),
            "lambda": req.lambda.coords,
            "w": w.to_string(),
            "canonicalized": canonicalized,
            "model": model,
            "terms": poly.to_json_terms(),
            "text": poly.render_text(),
        })
        .to_string(),
        Err(e) => e,
    }
}

pub fn crosscheck_json(request: &str) -> String {
    let (req, _) = match parse_request(request) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let reps = enumerate_minimal_reps(&req.datum, &req.datum.j_of_weight(&req.lambda));
    let mut rows = Vec::new();
    let mut agree = 0usize;
    for w in &reps {
        match all_models(&req.datum, &req.lambda, w) {
            Ok((poly, None)) => {
                agree += 1;
                rows.push(json!({
                    "w": w.to_string(),
                    "agree": true,
                    "text": poly.render_text(),
                    "terms": poly.to_json_terms(),
                }));
            }
            Ok((poly, Some(mismatch))) => {
                rows.push(json!({
                    "w": w.to_string(),
                    "agree": false,
                    "text": poly.render_text(),
                    "mismatch": mismatch,
                }));
            }
            Err(e) => return e,
        }
    }
    json!({
        "type": req.datum.cartan_type().to_string(),
        "lambda": req.lambda.coords,
        "rows": rows,
        "summary": format!("{agree}/{} agree (4 models)", reps.len()),
    })
    .to_string()
}

pub fn qbg_dot_json(request: &str) -> String {
    let (req, _) = match parse_request(request) {
        Ok(v) => v,
        Err(e) => return e,
    };
    let j = req.datum.j_of_weight(&req.lambda);
    let graph = build_qbg(&req.datum, &j);
    json!({
        "vertices": graph.vertices().len(),
        "edges": graph.num_edges(),
        "dot": graph.to_dot(&req.datum),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_roundtrip() {
        let out = compute_json(r#"{"type":"A1","lambda":[2],"w":"s1","model":"qls"}"#);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["text"], "x^[2] + 1 + q + x^[-2]");
        assert_eq!(v["canonicalized"], false);
        assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn compute_canonicalizes() {
        let out = compute_json(r#"{"type":"A2","lambda":[1,0],"w":"s2","model":"all"}"#);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["w"], "e");
        assert_eq!(v["canonicalized"], true);
        assert_eq!(v["text"], "x^[1,0]");
    }

    #[test]
    fn compute_rejects_bad_input() {
        for bad in [
            "not json",
            r#"{"type":"H3","lambda":[1,1,1]}"#,
            r#"{"type":"A2","lambda":[1]}"#,
            r#"{"type":"A2","lambda":[-1,0]}"#,
        ] {
            let v: Value = serde_json::from_str(&compute_json(bad)).unwrap();
            assert!(v["error"].is_string(), "expected error for {bad}");
        }
    }

    #[test]
    fn crosscheck_reports_agreement() {
        let out = crosscheck_json(r#"{"type":"A1","lambda":[2]}"#);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"], "2/2 agree (4 models)");
        assert_eq!(v["rows"][0]["agree"], true);
    }

    #[test]
    fn qbg_dot_counts() {
        let out = qbg_dot_json(r#"{"type":"A2","lambda":[1,1]}"#);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["vertices"], 6);
        assert_eq!(v["edges"], 15);
        assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    }
}
