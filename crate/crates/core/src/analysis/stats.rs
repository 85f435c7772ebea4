use serde::Serialize;

use crate::error::{Error, Result};

const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Regularized incomplete beta `I_x(a, b)`.
pub fn inc_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_cf(x, a, b) / a
    } else {
        1.0 - ln_front.exp() * beta_cf(1.0 - x, b, a) / b
    }
}

/// Continued fraction for the incomplete beta, modified Lentz.
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let mut c = 1.0;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        for coef in [aa, -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0))] {
            d = 1.0 + coef * d;
            if d.abs() < TINY {
                d = TINY;
            }
            c = 1.0 + coef / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            h *= d * c;
        }
        if (d * c - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Two-sided p-value of Student's t with `df` degrees of freedom.
pub fn t_two_sided_p(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return 0.0;
    }
    inc_beta(df / (df + t * t), df / 2.0, 0.5)
}

/// Upper-tail p-value of an F statistic.
pub fn f_upper_p(f: f64, df1: f64, df2: f64) -> f64 {
    if f <= 0.0 {
        return 1.0;
    }
    if !f.is_finite() {
        return 0.0;
    }
    inc_beta(df2 / (df2 + df1 * f), df2 / 2.0, df1 / 2.0)
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample standard deviation (`n - 1` denominator).
pub fn sd(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)).sqrt()
}

pub fn sem(x: &[f64]) -> f64 {
    sd(x) / (x.len() as f64).sqrt()
}

pub fn cityblock(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub df: f64,
    pub p: f64,
    /// Cohen's d for t tests.
    pub effect: f64,
}

fn check(x: &[f64], what: &str) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::Degenerate(format!("{what} needs at least two values")));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("test input"));
    }
    Ok(())
}

/// One-sample t test of `mean(x) = mu`.
pub fn one_sample_t(x: &[f64], mu: f64) -> Result<TestResult> {
    check(x, "t test")?;
    let s = sd(x);
    if s == 0.0 {
        return Err(Error::Degenerate("t test on constant values".into()));
    }
    let n = x.len() as f64;
    let d = (mean(x) - mu) / s;
    let t = d * n.sqrt();
    Ok(TestResult {
        statistic: t,
        df: n - 1.0,
        p: t_two_sided_p(t, n - 1.0),
        effect: d,
    })
}

/// Paired t test on `a - b`.
pub fn paired_t(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    one_sample_t(&diff, 0.0)
}

/// Student's t test for two independent samples with pooled variance.
pub fn unpaired_t(a: &[f64], b: &[f64]) -> Result<TestResult> {
    check(a, "t test")?;
    check(b, "t test")?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let pooled = (((na - 1.0) * sd(a).powi(2) + (nb - 1.0) * sd(b).powi(2)) / (na + nb - 2.0)).sqrt();
    if pooled == 0.0 {
        return Err(Error::Degenerate("t test on constant values".into()));
    }
    let diff = mean(a) - mean(b);
    let t = diff / (pooled * (1.0 / na + 1.0 / nb).sqrt());
    let df = na + nb - 2.0;
    Ok(TestResult {
        statistic: t,
        df,
        p: t_two_sided_p(t, df),
        effect: diff / pooled,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnovaResult {
    pub f: f64,
    pub df_between: f64,
    pub df_within: f64,
    pub p: f64,
    /// `SS_between / (SS_between + SS_within)`.
    pub partial_eta_sq: f64,
}

/// One-way between-groups ANOVA.
pub fn oneway_anova(groups: &[&[f64]]) -> Result<AnovaResult> {
    if groups.len() < 2 {
        return Err(Error::Degenerate("ANOVA needs at least two groups".into()));
    }
    for g in groups {
        check(g, "ANOVA group")?;
    }
    let n: usize = groups.iter().map(|g| g.len()).sum();
    let grand = groups.iter().flat_map(|g| g.iter()).sum::<f64>() / n as f64;
    let ss_between: f64 = groups.iter().map(|g| g.len() as f64 * (mean(g) - grand).powi(2)).sum();
    let ss_within: f64 = groups
        .iter()
        .map(|g| {
            let m = mean(g);
            g.iter().map(|v| (v - m).powi(2)).sum::<f64>()
        })
        .sum();
    if ss_within == 0.0 {
        return Err(Error::Degenerate("ANOVA groups have no within-group variance".into()));
    }
    let df_between = (groups.len() - 1) as f64;
    let df_within = (n - groups.len()) as f64;
    let f = (ss_between / df_between) / (ss_within / df_within);
    Ok(AnovaResult {
        f,
        df_between,
        df_within,
        p: f_upper_p(f, df_between, df_within),
        partial_eta_sq: ss_between / (ss_between + ss_within),
    })
}

/// Bonferroni-adjusted p-value for `m` comparisons.
pub fn bonferroni(p: f64, m: usize) -> f64 {
    (p * m as f64).min(1.0)
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    check(x, "correlation")?;
    check(y, "correlation")?;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("correlation with a constant series".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Pearson's r with its two-sided p-value (`t = r sqrt((n-2)/(1-r²))`).
pub fn pearson_test(x: &[f64], y: &[f64]) -> Result<TestResult> {
    let r = pearson(x, y)?;
    let df = x.len() as f64 - 2.0;
    let t = if r.abs() >= 1.0 { f64::INFINITY } else { r * (df / (1.0 - r * r)).sqrt() };
    Ok(TestResult {
        statistic: r,
        df,
        p: if df > 0.0 { t_two_sided_p(t, df) } else { 1.0 },
        effect: r,
    })
}
