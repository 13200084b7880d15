use std::f64::consts::{E, PI};

use gb2kit::fit::ks_statistic;
use gb2kit::ineq::{
    bp_asymptotics, dmms, empirical_indices, gini_closed, hoover_closed, index_quadrature,
    theil_t_closed, Index,
};
use gb2kit::specfun::{erf, erfc, reg_inc_beta, reg_inc_gamma_q};
use gb2kit::{DistributionSpec, Quantity};
use statrs::distribution::{Beta, ContinuousCDF, Gamma, LogNormal};

fn table4_gb2() -> DistributionSpec {
    DistributionSpec::gb2(3.03, 1.5521, 1.8265, 57.5208).unwrap()
}

fn table4_bp() -> DistributionSpec {
    DistributionSpec::bp(13.3205, 3.7632, 23.4072).unwrap()
}

#[test]
fn cdfs_agree_with_statrs() {
    let ga = DistributionSpec::ga(2.7, 3.5).unwrap();
    let ga_ref = Gamma::new(2.7, 1.0 / 3.5).unwrap();
    let ln = DistributionSpec::ln(1.2, 0.7).unwrap();
    let ln_ref = LogNormal::new(1.2, 0.7).unwrap();
    // x/(β + x) of a beta prime variable is Beta(p, q).
    let bp = DistributionSpec::bp(2.5, 3.5, 4.0).unwrap();
    let bp_ref = Beta::new(2.5, 3.5).unwrap();
    for k in 1..60 {
        let x = 0.3 * k as f64;
        assert!(
            (ga.cdf(x).unwrap() - ga_ref.cdf(x)).abs() < 1e-12,
            "Ga at {x}"
        );
        // statrs' erf is itself only good to about 5e-11.
        assert!(
            (ln.cdf(x).unwrap() - ln_ref.cdf(x)).abs() < 1e-10,
            "LN at {x}"
        );
        assert!(
            (bp.cdf(x).unwrap() - bp_ref.cdf(x / (4.0 + x))).abs() < 1e-12,
            "BP at {x}"
        );
    }
}

#[test]
fn error_function_against_libm() {
    let reference = [
        (0.1, 0.1124629160182849, 0.8875370839817152),
        (0.2192, 0.24343570743853413, 0.7565642925614658),
        (0.31, 0.33890815031079025, 0.6610918496892098),
        (0.5, 0.5204998778130465, 0.4795001221869535),
        (1.0, 0.8427007929497149, 0.15729920705028513),
        (1.7, 0.9837904585907745, 0.016209541409225436),
        (2.5, 0.999593047982555, 0.0004069520174449589),
        (4.0, 0.9999999845827421, 1.541725790028002e-08),
    ];
    for (x, erf_x, erfc_x) in reference {
        assert!((erf(x) - erf_x).abs() <= 1e-15, "erf({x})");
        assert!((erf(-x) + erf_x).abs() <= 1e-15, "erf(-{x})");
        assert!(
            (erfc(x) - erfc_x).abs() <= 1e-13 * erfc_x,
            "erfc({x}): {:e}",
            erfc(x) / erfc_x - 1.0
        );
    }
}

#[test]
fn density_special_values() {
    let beta = 3.0;
    let bp = DistributionSpec::bp(1.0, 2.0, beta).unwrap();
    assert!((bp.pdf(1e-12).unwrap() - 2.0 / beta).abs() < 1e-9);
    let ln = DistributionSpec::ln(1.5, 0.4).unwrap();
    let peak = 1.0 / (1.5f64.exp() * 0.4 * (2.0 * PI).sqrt());
    assert!((ln.pdf(1.5f64.exp()).unwrap() - peak).abs() < 1e-14);
    let gb2 = DistributionSpec::gb2(2.0, 3.0, 1.0, beta).unwrap();
    let bp = DistributionSpec::bp(2.0, 3.0, beta).unwrap();
    for x in [beta / 2.0, beta, 2.0 * beta] {
        assert!((gb2.pdf(x).unwrap() - bp.pdf(x).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn cdf_special_values() {
    let gb2 = DistributionSpec::gb2(2.3, 1.7, 2.5, 6.0).unwrap();
    assert!((gb2.cdf(6.0).unwrap() - reg_inc_beta(0.5, 2.3, 1.7).unwrap()).abs() < 1e-14);
    let giga = DistributionSpec::giga(2.2, 1.4, 6.0).unwrap();
    assert!((giga.cdf(6.0).unwrap() - reg_inc_gamma_q(2.2, 1.0).unwrap()).abs() < 1e-14);
    let exponential = DistributionSpec::ga(1.0, 2.0).unwrap();
    for x in [0.1, 1.0, 5.0, 20.0] {
        assert!((exponential.cdf(x).unwrap() - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-14);
    }
}

#[test]
fn fitted_means_and_second_moments() {
    assert!((table4_bp().mean().unwrap() - 112.8402).abs() < 0.01);
    assert!((table4_gb2().mean().unwrap() - 113.7045).abs() < 0.01);
    assert_eq!(
        DistributionSpec::gb2(2.0, 0.5, 1.8, 10.0).unwrap().mean(),
        Quantity::NonExistent
    );
    assert_eq!(
        DistributionSpec::gb2(1.1477, 0.5488, 3.5129, 70.7373)
            .unwrap()
            .rms(),
        Quantity::NonExistent
    );
    let (mu, sigma) = (4.5178f64, 0.62f64);
    let ln_rms = (mu + sigma * sigma).exp();
    assert!(
        (DistributionSpec::ln(mu, sigma).unwrap().rms().unwrap() - ln_rms).abs() < 1e-9 * ln_rms
    );
    let (alpha, beta) = (2.4f64, 7.0f64);
    let ga_rms = beta * (alpha * (alpha + 1.0)).sqrt();
    assert!(
        (DistributionSpec::ga(alpha, beta).unwrap().rms().unwrap() - ga_rms).abs() < 1e-10 * ga_rms
    );
}

#[test]
fn quantiles_and_modes() {
    let ln = DistributionSpec::ln(2.0, 0.6).unwrap();
    assert!((ln.quantile(0.5).unwrap() - 2f64.exp()).abs() < 1e-12);
    assert!((ln.mode() - (2.0 - 0.36f64).exp()).abs() < 1e-10);
    let bp = DistributionSpec::bp(2.0, 3.0, 5.0).unwrap();
    for u in [0.01, 0.3, 0.5, 0.9, 0.999] {
        assert!((bp.cdf(bp.quantile(u).unwrap()).unwrap() - u).abs() < 1e-8);
    }
    assert_eq!(DistributionSpec::bp(1.0, 2.0, 5.0).unwrap().mode(), 0.0);
    let (p, q, beta) = (4.0, 3.0, 10.0);
    let mode = DistributionSpec::bp(p, q, beta).unwrap().mode();
    assert!((mode - beta * (p - 1.0) / (q + 1.0)).abs() < 1e-8);
}

#[test]
fn variable_inversion() {
    let bp = DistributionSpec::bp(13.32, 3.76, 23.41).unwrap();
    assert_eq!(
        bp.invert_variable(),
        DistributionSpec::bp(3.76, 13.32, 1.0 / 23.41).unwrap()
    );
    assert_eq!(bp.invert_variable().invert_variable(), bp);
    let ln = DistributionSpec::ln(4.5178, 0.62).unwrap();
    assert_eq!(
        ln.invert_variable(),
        DistributionSpec::ln(-4.5178, 0.62).unwrap()
    );
}

#[test]
fn survival_slopes() {
    assert!((table4_gb2().tail_exponents().unwrap().survival_slope + 2.835).abs() < 5e-4);
    let bp = DistributionSpec::bp(13.32, 3.7632, 23.4)
        .unwrap()
        .tail_exponents()
        .unwrap();
    assert!((bp.survival_slope + 3.763).abs() < 5e-4);
    assert_eq!(bp.front, Some(12.32));
    let giga = DistributionSpec::giga(5.4618, 0.72, 849.623).unwrap();
    // The published shape parameters are themselves rounded: their product
    // is 3.932496, a hair below the printed slope.
    assert!((giga.tail_exponents().unwrap().survival_slope + 3.933).abs() < 1e-3);
    assert!(DistributionSpec::ga(2.0, 1.0)
        .unwrap()
        .tail_exponents()
        .is_err());
}

#[test]
fn moment_predicates() {
    let gb2 = |q| DistributionSpec::gb2(2.0, q, 2.0, 1.0).unwrap();
    assert!(!gb2(0.5).mean_exists() && gb2(0.6).mean_exists());
    assert!(!gb2(1.0).variance_exists() && gb2(1.1).variance_exists());
    assert!(DistributionSpec::bp(2.0, 3.0, 1.0)
        .unwrap()
        .is_bell_shaped());
    assert!(!DistributionSpec::bp(1.0, 3.0, 1.0)
        .unwrap()
        .is_bell_shaped());
    assert!(!DistributionSpec::gb2(0.5, 3.0, 1.5, 1.0)
        .unwrap()
        .is_bell_shaped());
}

#[test]
fn quadrature_matches_known_forms() {
    let bp = DistributionSpec::bp(3.0, 4.0, 1.0).unwrap();
    let quad = index_quadrature(&bp, Index::Gini).unwrap();
    assert!((quad - gini_closed(&bp).unwrap().unwrap()).abs() < 1e-6);
    let ln = DistributionSpec::ln(0.0, 0.62).unwrap();
    assert!((index_quadrature(&ln, Index::TheilT).unwrap() - 0.62 * 0.62 / 2.0).abs() < 1e-6);
    // Gamma(α) Hoover: P(α, α) − P(α + 1, α) = α^α e^(−α) / Γ(α + 1).
    let ga = DistributionSpec::ga(2.0, 1.0).unwrap();
    assert!((index_quadrature(&ga, Index::Hoover).unwrap() - 2.0 * (-2.0f64).exp()).abs() < 1e-6);
    assert!((hoover_closed(&ga).unwrap().unwrap() - 2.0 * (-2.0f64).exp()).abs() < 1e-12);
}

#[test]
fn published_index_values() {
    let ln = DistributionSpec::ln(4.5178, 0.62).unwrap();
    assert!((gini_closed(&ln).unwrap().unwrap() - 0.3389).abs() < 5e-4);
    assert!((hoover_closed(&ln).unwrap().unwrap() - 0.2434).abs() < 5e-4);
    let giga = DistributionSpec::giga(5.4618, 0.72, 849.623).unwrap();
    assert!((gini_closed(&giga).unwrap().unwrap() - 0.3624).abs() < 5e-4);
    assert!((hoover_closed(&table4_gb2()).unwrap().unwrap() - 0.2580).abs() < 5e-4);
    assert!((dmms(&table4_gb2()).unwrap().unwrap().value - 0.1929).abs() < 2e-3);
    assert!((dmms(&ln).unwrap().unwrap().value - 0.1551).abs() < 2e-3);
    assert!(
        (dmms(&DistributionSpec::bp(1.0, 2.0, 7.0).unwrap())
            .unwrap()
            .unwrap()
            .value
            - (3.0 - 2f64.powf(4.0 / 3.0)))
        .abs()
            < 1e-8
    );
}

#[test]
fn large_parameter_limits() {
    let bp = |p, q| DistributionSpec::bp(p, q, 1.0).unwrap();
    let lim = bp_asymptotics(1.0, 100.0);
    assert!((lim.gini_unit_p - 0.5025).abs() < 1e-12);
    assert!((gini_closed(&bp(1.0, 100.0)).unwrap().unwrap() - lim.gini_unit_p).abs() < 1e-3);
    let lim = bp_asymptotics(50.0, 2.0);
    assert!((lim.theil_t_q_two - (0.577_215_664_901_532_9 + 0.01)).abs() < 1e-12);
    assert!((theil_t_closed(&bp(50.0, 2.0)).unwrap().unwrap() - lim.theil_t_q_two).abs() < 1e-3);
    assert!((bp_asymptotics(1.0, 1e6).hoover_unit_p - 1.0 / E).abs() < 1e-6);
}

#[test]
fn sampling() {
    let gb2 = DistributionSpec::gb2(3.03, 1.5521, 1.8265, 57.52).unwrap();
    let sample = gb2.sample(100_000, 17).unwrap();
    assert!(ks_statistic(&sample, &gb2).unwrap() < 0.01);
    assert_eq!(
        gb2.sample(1, 4).unwrap().values(),
        gb2.sample(1, 4).unwrap().values()
    );

    let bp = DistributionSpec::bp(13.32, 3.76, 23.41).unwrap();
    let mean = bp.sample(1_000_000, 3).unwrap().mean();
    assert!((mean - 112.84).abs() < 1.0, "{mean}");
}

#[test]
fn empirical_gini_of_many_draws() {
    let sample = DistributionSpec::gb2(3.03, 1.5521, 1.8265, 57.52)
        .unwrap()
        .sample(1_000_000, 21)
        .unwrap();
    let gini = empirical_indices(&sample).unwrap().gini.unwrap();
    assert!((gini - 0.3609).abs() < 3e-3, "{gini}");
}

#[test]
fn gb2_approaches_generalized_gamma() {
    let (p, alpha, beta, q) = (2.0f64, 1.5f64, 3.0f64, 500.0f64);
    let gb2 = DistributionSpec::gb2(p, q, alpha, beta * q.powf(1.0 / alpha)).unwrap();
    let gga = DistributionSpec::gga(p, alpha, beta).unwrap();
    let sample = gb2.sample(20_000, 5).unwrap();
    assert!(ks_statistic(&sample, &gga).unwrap() < 0.01);
}
