//! Verification suites run over seeded corpora.
//!
//! Each suite draws its corpus from [`CorpusSpec`] with the configured seed
//! and emits its checks in corpus order, so a report depends only on the
//! settings.

use std::str::FromStr;

use lehmer_core::algnum::AlgebraicNumber;
use lehmer_core::bounds::{vout2, voutier};
use lehmer_core::corpus::CorpusSpec;
use lehmer_core::dyadic::{parse_rational, Dyadic};
use lehmer_core::fields::{in_k_div, v_lower, v_upper_norm_trick, w_height, NumberField};
use lehmer_core::heights::{height_of_power, weil_height, HeightInterval};
use lehmer_core::relheight::{verify_doubleweak, SearchParams, Verdict};
use lehmer_core::subgroup::{make_subgroup, DEFAULT_RELATION_BOUND};
use lehmer_core::{Error, Result};

use crate::report::{height, num, Check, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Thma,
    Voutier,
    Doubleweak,
    All,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Axioms, Suite::Thma, Suite::Voutier, Suite::Doubleweak];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Thma => "thma",
            Suite::Voutier => "voutier",
            Suite::Doubleweak => "doubleweak",
            Suite::All => "all",
        }
    }

    /// The corpus a suite runs on when no override is given.
    pub fn default_corpus(self, seed: u64) -> CorpusSpec {
        match self {
            Suite::Axioms => CorpusSpec::new(seed, (1, 6), 20, 200),
            Suite::Thma => CorpusSpec::new(seed, (2, 5), 20, 100),
            Suite::Voutier => CorpusSpec::new(seed, (3, 10), 20, 100),
            Suite::Doubleweak | Suite::All => CorpusSpec::new(seed, (3, 5), 20, 25),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "thma" => Suite::Thma,
            "voutier" => Suite::Voutier,
            "doubleweak" => Suite::Doubleweak,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite '{s}'"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub tol: Dyadic,
    pub max_bits: u64,
    /// Replaces the default corpus size of every suite.
    pub count: Option<usize>,
    pub m_max: Option<u64>,
    pub e_max: Option<u64>,
}

impl Settings {
    pub fn new(seed: u64, tol: Dyadic, max_bits: u64) -> Settings {
        Settings { seed, tol, max_bits, count: None, m_max: None, e_max: None }
    }

    fn corpus(&self, suite: Suite) -> CorpusSpec {
        let mut c = suite.default_corpus(self.seed);
        if let Some(n) = self.count {
            c.count = n;
        }
        c
    }
}

pub fn run(suite: Suite, s: &Settings) -> Result<Report> {
    match suite {
        Suite::Axioms => axioms(s),
        Suite::Thma => thma(s),
        Suite::Voutier => voutier_suite(s),
        Suite::Doubleweak => doubleweak(s),
        Suite::All => {
            let mut r = Report::new();
            for part in Suite::ALL {
                r.extend(run(part, s)?);
            }
            Ok(r)
        }
    }
}

fn guarded(name: String, tag: &'static str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::from_error(name, tag, &e))
}

/// `|x - y| <= slack` for two enclosures of the same quantity.
fn agree(name: String, tag: &'static str, x: &HeightInterval, y: &HeightInterval, slack: &Dyadic) -> Check {
    let far = Dyadic::max(&(x.hi() - y.lo()), &(y.hi() - x.lo()));
    let near = Dyadic::max(&(x.lo() - y.hi()), &(y.lo() - x.hi()));
    let status = if far <= *slack {
        Status::Pass
    } else if near > *slack {
        Status::Fail
    } else {
        Status::Indeterminate
    };
    Check::new(name, tag, status).sides(height(x), height(y)).tol(slack)
}

const EXPONENTS: [i64; 6] = [2, -1, 3, -2, 5, -3];

/// Positivity with Kronecker's theorem, scaling, the triangle inequality and
/// Galois invariance.
pub fn axioms(s: &Settings) -> Result<Report> {
    let corpus = s.corpus(Suite::Axioms).generate(s.max_bits)?;
    let (tol, mb) = (&s.tol, s.max_bits);
    let slack = tol.shl(2);
    let mut r = Report::new();
    for (i, a) in corpus.iter().enumerate() {
        let h = weil_height(a, tol, mb);
        r.push(guarded(format!("axioms/torsion/{i}"), "axiom1", || {
            let h = h.clone()?;
            let (ok, maybe, rhs) = match a.is_torsion() {
                Some(n) => (h.is_exact_zero(), false, format!("torsion of order {n}")),
                None => (h.lo().is_positive(), !h.hi().is_zero(), "non-torsion".to_string()),
            };
            let status = match (ok, maybe) {
                (true, _) => Status::Pass,
                (false, true) => Status::Indeterminate,
                (false, false) => Status::Fail,
            };
            Ok(Check::new(format!("axioms/torsion/{i}"), "axiom1", status).sides(height(&h), rhs))
        }));
        let e = EXPONENTS[i % EXPONENTS.len()];
        r.push(guarded(format!("axioms/scaling/{i}"), "axiom2", || {
            let direct = weil_height(&a.pow_int(e, mb)?, tol, mb)?;
            let scaled = height_of_power(a, e, tol, mb)?;
            Ok(agree(format!("axioms/scaling/{i}"), "axiom2", &direct, &scaled, &slack))
        }));
        let b = &corpus[(i + 1) % corpus.len()];
        r.push(guarded(format!("axioms/triangle/{i}"), "axiom3", || {
            let hab = weil_height(&a.mul(b, mb)?, tol, mb)?;
            let h = h.clone()?;
            let hb = weil_height(b, tol, mb)?;
            let rhs = &(h.hi() + hb.hi()) + &tol.shl(1);
            Ok(Check::le(format!("axioms/triangle/{i}"), "axiom3", (hab.lo(), hab.lo()), (&rhs, &rhs)).tol(tol))
        }));
        r.push(guarded(format!("axioms/galois/{i}"), "axiom4", || {
            let h = h.clone()?;
            let mut same = true;
            for c in a.conjugates() {
                same &= weil_height(&c, tol, mb)? == h;
            }
            Ok(Check::truth(
                format!("axioms/galois/{i}"),
                "axiom4",
                same,
                height(&h),
                format!("{} conjugates", a.degree()),
            ))
        }));
    }
    Ok(r)
}

/// The sandwich `W/2 <= V <= (1/n) h(alpha^n / N) <= W` over `Q`, and the
/// divisibility criterion `W = 0 <=> alpha in Q^div`.
pub fn thma(s: &Settings) -> Result<Report> {
    let corpus = s.corpus(Suite::Thma).generate(s.max_bits)?;
    let (tol, mb) = (&s.tol, s.max_bits);
    let q = NumberField::rationals();
    let mut r = Report::new();
    for (i, a) in corpus.iter().enumerate() {
        let vals = (|| -> Result<_> {
            Ok((v_lower(a, &q, tol, mb)?, v_upper_norm_trick(a, &q, tol, mb)?, w_height(a, &q, tol, mb)?))
        })();
        let (lo, up, w) = match vals {
            Ok(v) => v,
            Err(e) => {
                r.push(Check::from_error(format!("thma/lower/{i}"), "thm4", &e));
                continue;
            }
        };
        r.push(Check::le(format!("thma/lower/{i}"), "thm4", (lo.lo(), lo.lo()), (up.hi(), up.hi())).tol(tol));
        let w_up = w.hi() + &tol.shl(1);
        r.push(Check::le(format!("thma/upper/{i}"), "thm4", (up.hi(), up.hi()), (&w_up, &w_up)).tol(tol));
        r.push(guarded(format!("thma/cor5/{i}"), "cor5", || {
            let div = in_k_div(a, &q, mb)?;
            let ok = div == w.is_exact_zero() && div == up.is_exact_zero();
            Ok(Check::truth(
                format!("thma/cor5/{i}"),
                "cor5",
                ok,
                format!("in_k_div={div}"),
                format!("W={} V_upper={}", height(&w), height(&up)),
            ))
        }));
    }
    Ok(r)
}

/// `h(alpha) >= voutier(d)` for non-torsion `alpha`, and
/// `W(alpha) >= 2 vout2(d)` when no power of `alpha` is rational.
pub fn voutier_suite(s: &Settings) -> Result<Report> {
    let corpus = s.corpus(Suite::Voutier).generate_where(s.max_bits, |a| Ok(a.is_torsion().is_none()))?;
    let (tol, mb) = (&s.tol, s.max_bits);
    let q = NumberField::rationals();
    let mut r = Report::new();
    for (i, a) in corpus.iter().enumerate() {
        let d = a.degree() as u64;
        r.push(guarded(format!("voutier/vout/{i}"), "vout", || {
            let h = weil_height(a, tol, mb)?;
            let b = voutier(d)?;
            Ok(Check::le(format!("voutier/vout/{i}"), "vout", (&b, &b), (h.hi(), h.hi())).tol(tol))
        }));
        let div = match in_k_div(a, &q, mb) {
            Ok(v) => v,
            Err(e) => {
                r.push(Check::from_error(format!("voutier/long1/{i}"), "long1", &e));
                continue;
            }
        };
        if !div {
            r.push(guarded(format!("voutier/long1/{i}"), "long1", || {
                let w = w_height(a, &q, tol, mb)?;
                let b = vout2(d)?.shl(1);
                Ok(Check::le(format!("voutier/long1/{i}"), "long1", (&b, &b), (w.hi(), w.hi())).tol(tol))
            }));
        }
    }
    Ok(r)
}

/// `h_Gamma(alpha) >= C_Gamma(eps) / d^(n+1+eps)` for `Gamma = <2>`,
/// `eps = 3/2`, on numbers with no rational power.
pub fn doubleweak(s: &Settings) -> Result<Report> {
    let (tol, mb) = (&s.tol, s.max_bits);
    let q = NumberField::rationals();
    let corpus = s.corpus(Suite::Doubleweak).generate_where(mb, |a| Ok(!in_k_div(a, &q, mb)?))?;
    let g = make_subgroup(vec![AlgebraicNumber::from_i64(2, 1)?], DEFAULT_RELATION_BOUND, tol, mb)?;
    let eps = parse_rational("3/2")?;
    let mut params = SearchParams::default();
    if let Some(m) = s.m_max {
        params.m_max = m;
    }
    if let Some(e) = s.e_max {
        params.e_max = e;
    }
    let mut r = Report::new();
    for (i, a) in corpus.iter().enumerate() {
        let name = format!("doubleweak/{i}");
        r.push(guarded(name.clone(), "hg1ge", || {
            let rep = verify_doubleweak(a, &g, &eps, &params, tol, mb)?;
            let status = match rep.holds {
                Verdict::Holds => Status::Pass,
                Verdict::Fails => Status::Fail,
                Verdict::Indeterminate => Status::Indeterminate,
            };
            Ok(Check::new(name, "hg1ge", status)
                .sides(height(&rep.lhs), format!("[{}, {}]", num(&rep.rhs_lo), num(&rep.rhs_hi)))
                .tol(tol))
        }));
    }
    Ok(r)
}
