//! Uniformity histogram: sample N objects, tabulate how often each class
//! member was hit, and report the multiplicity distribution against the
//! binomial reference curve together with a chi-square statistic over the
//! per-class counts.

use std::collections::BTreeMap;

use knc::counting::CountTable;
use knc::oracle::ObjectKind;
use statrs::distribution::{Binomial, Discrete};

use crate::batch;

pub struct HistRow {
    pub multiplicity: u64,
    /// Number of classes observed exactly `multiplicity` times.
    pub observed: u64,
    /// Reference curve: `m · B(N, ℓ) p^ℓ (1-p)^{N-ℓ}` with `p = 1/m`.
    pub expected: f64,
}

pub struct HistogramReport {
    pub k: usize,
    pub n: usize,
    pub class: ObjectKind,
    pub seed: u64,
    /// Exact class size `m`.
    pub class_count: u64,
    /// Sample count `N`.
    pub samples: u64,
    /// Chi-square of observed per-class counts against `N/m`, over all `m`
    /// classes; `m - 1` degrees of freedom.
    pub chi_square: f64,
    pub dof: u64,
    pub rows: Vec<HistRow>,
}

pub fn build_report(
    table: &CountTable,
    class: ObjectKind,
    class_count: u64,
    samples: u64,
    seed: u64,
    jobs: usize,
) -> HistogramReport {
    let counts = batch::multiplicity_counts(table, samples, seed, jobs);
    let m = class_count as f64;
    let expected_per_class = samples as f64 / m;

    let mut by_multiplicity: BTreeMap<u64, u64> = BTreeMap::new();
    let mut chi_square = 0.0;
    for &observed in counts.values() {
        *by_multiplicity.entry(observed).or_insert(0) += 1;
        let dev = observed as f64 - expected_per_class;
        chi_square += dev * dev / expected_per_class;
    }
    let unseen = class_count - counts.len() as u64;
    if unseen > 0 {
        by_multiplicity.insert(0, unseen);
        chi_square += unseen as f64 * expected_per_class;
    }

    let reference =
        Binomial::new(1.0 / m, samples).expect("0 < 1/m <= 1 for a nonempty class");
    // Rows cover every observed multiplicity plus the visible span of the
    // reference curve (mean ± 6 sigma), one contiguous block.
    let mean = expected_per_class;
    let sigma = (samples as f64 * (1.0 / m) * (1.0 - 1.0 / m)).sqrt();
    let lo_curve = (mean - 6.0 * sigma).floor().max(0.0) as u64;
    let hi_curve = (mean + 6.0 * sigma).ceil() as u64;
    let lo = by_multiplicity
        .keys()
        .next()
        .copied()
        .unwrap_or(lo_curve)
        .min(lo_curve);
    let hi = by_multiplicity
        .keys()
        .next_back()
        .copied()
        .unwrap_or(hi_curve)
        .max(hi_curve);
    let rows = (lo..=hi)
        .map(|multiplicity| HistRow {
            multiplicity,
            observed: by_multiplicity.get(&multiplicity).copied().unwrap_or(0),
            expected: m * reference.pmf(multiplicity),
        })
        .collect();

    HistogramReport {
        k: table.k(),
        n: table.n(),
        class,
        seed,
        class_count,
        samples,
        chi_square,
        dof: class_count - 1,
        rows,
    }
}

impl HistogramReport {
    /// Tab-separated rendering: header key/value pairs, then one row per
    /// multiplicity.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# knc hist\tk={}\tn={}\tclass={}\tseed={}\n",
            self.k, self.n, self.class, self.seed
        ));
        out.push_str(&format!("classes\t{}\n", self.class_count));
        out.push_str(&format!("samples\t{}\n", self.samples));
        out.push_str(&format!("chi2\t{:.6}\n", self.chi_square));
        out.push_str(&format!("df\t{}\n", self.dof));
        out.push_str("multiplicity\tobserved_classes\texpected_classes\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{:.6}\n",
                row.multiplicity, row.observed, row.expected
            ));
        }
        out
    }
}
