//! The single-shot subcommands. Each returns the JSON records it prints.

use lehmer_core::bounds::{table, BoundParams};
use lehmer_core::dyadic::{parse_rational, Dyadic};
use lehmer_core::fields::{conjugates_over_k, in_k_div, v_lower, v_upper_norm_trick, w_height, NumberField};
use lehmer_core::heights::weil_height;
use lehmer_core::literal::{parse_field, parse_gamma_gens, parse_number, parse_rational_vector};
use lehmer_core::relheight::{dirichlet_approx, hgamma_upper_search, remond_constant};
use lehmer_core::subgroup::{make_subgroup, DEFAULT_RELATION_BOUND};
use lehmer_core::Result;
use num_rational::BigRational;
use serde_json::{json, Value};

fn field(lit: Option<&str>, max_bits: u64) -> Result<NumberField> {
    match lit {
        Some(s) => parse_field(s, max_bits),
        None => Ok(NumberField::rationals()),
    }
}

pub fn height(lit: &str, tol: &Dyadic, max_bits: u64) -> Result<Value> {
    let a = parse_number(lit, max_bits)?;
    let h = weil_height(&a, tol, max_bits)?;
    Ok(json!({
        "number": a.to_literal(),
        "degree": a.degree(),
        "height": h,
        "approx": format!("{:.12}", h.mid_f64()),
        "torsion_order": a.is_torsion(),
    }))
}

pub fn conj(lit: &str, k: Option<&str>, max_bits: u64) -> Result<Value> {
    let a = parse_number(lit, max_bits)?;
    let k = field(k, max_bits)?;
    let c = conjugates_over_k(&a, &k, max_bits)?;
    Ok(json!({
        "number": a.to_literal(),
        "field_degree": k.degree(),
        "conjugates": c.iter().map(|x| x.to_literal()).collect::<Vec<_>>(),
    }))
}

pub fn wk(lit: &str, k: Option<&str>, tol: &Dyadic, max_bits: u64) -> Result<Value> {
    let a = parse_number(lit, max_bits)?;
    let k = field(k, max_bits)?;
    let w = w_height(&a, &k, tol, max_bits)?;
    Ok(json!({
        "number": a.to_literal(),
        "field_degree": k.degree(),
        "w": w,
        "approx": format!("{:.12}", w.mid_f64()),
    }))
}

pub fn vk(lit: &str, k: Option<&str>, tol: &Dyadic, max_bits: u64) -> Result<Value> {
    let a = parse_number(lit, max_bits)?;
    let k = field(k, max_bits)?;
    Ok(json!({
        "number": a.to_literal(),
        "field_degree": k.degree(),
        "lower": v_lower(&a, &k, tol, max_bits)?,
        "upper": v_upper_norm_trick(&a, &k, tol, max_bits)?,
        "in_k_div": in_k_div(&a, &k, max_bits)?,
    }))
}

/// The field generated by the subgroup generators, when they share one
/// (rational generators, or a single generator).
fn generator_field(gens: &[lehmer_core::AlgebraicNumber]) -> Option<NumberField> {
    if gens.iter().all(|g| g.is_rational()) {
        Some(NumberField::rationals())
    } else if gens.len() == 1 {
        Some(NumberField::new(gens[0].clone()))
    } else {
        None
    }
}

pub fn hgamma(alpha: &str, gamma: &str, m_max: u64, e_max: u64, tol: &Dyadic, max_bits: u64) -> Result<Value> {
    let a = parse_number(alpha, max_bits)?;
    let gens = parse_gamma_gens(gamma, max_bits)?;
    let k = generator_field(&gens);
    let g = make_subgroup(gens, DEFAULT_RELATION_BOUND, tol, max_bits)?;
    let search = hgamma_upper_search(&a, &g, m_max, e_max, tol, max_bits)?;
    let lower = match &k {
        Some(k) => Some(v_lower(&a, k, tol, max_bits)?),
        None => None,
    };
    let bracketed = lower.as_ref().map(|l| l.lo() <= search.best_value.hi());
    Ok(json!({
        "number": a.to_literal(),
        "upper": search.best_value,
        "best_at": search.best_at,
        "nodes_visited": search.nodes_visited,
        "exhaustive_over": search.exhaustive_over,
        "lower": lower,
        "bracketed": bracketed,
    }))
}

pub fn dirichlet(vector: &str, q: &str) -> Result<Value> {
    let a = parse_rational_vector(vector)?;
    let q = parse_rational(q)?;
    let (m, b) = dirichlet_approx(&a, &q)?;
    let err = b
        .to_rationals()
        .iter()
        .zip(&a)
        .map(|(x, y)| if x >= y { x - y } else { y - x })
        .max()
        .unwrap_or_default();
    let bound = (q * BigRational::from_integer(m.into())).recip();
    Ok(json!({
        "m": m,
        "b": b,
        "distance": err.to_string(),
        "bound": bound.to_string(),
    }))
}

pub fn bounds(p: &BoundParams) -> Vec<Value> {
    table(p).into_iter().map(|row| json!(row)).collect()
}

pub fn constant(gamma: &str, eps: &str, k_deg: u64, tol: &Dyadic, max_bits: u64) -> Result<Value> {
    let gens = parse_gamma_gens(gamma, max_bits)?;
    let g = make_subgroup(gens, DEFAULT_RELATION_BOUND, tol, max_bits)?;
    let eps = parse_rational(eps)?;
    let c = remond_constant(&g, k_deg, &eps)?;
    Ok(json!({
        "value": c.value,
        "value_approx": format!("{:.6e}", c.value.to_f64()),
        "inner": c.inner,
        "inner_approx": format!("{:.6e}", c.inner.to_f64()),
        "argmin": c.argmin,
        "delta": c.delta,
        "epsilon": eps.to_string(),
        "k_deg": k_deg,
        "lipschitz": g.l_gamma,
        "inner_source": "voutier",
    }))
}
