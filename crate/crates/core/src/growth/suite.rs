use serde::{Deserialize, Serialize};

use super::config::{CompareMode, ExperimentConfig, Family, NormMethod};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub config: ExperimentConfig,
}

fn powers_of_two(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| 1usize << k).collect()
}

fn entry(name: &str, family: Family, m: usize, p: &str, r: &str, n_values: Vec<usize>, method: NormMethod) -> SuiteEntry {
    let config = ExperimentConfig {
        seed: 20240601,
        ..ExperimentConfig::new(
            family,
            m,
            p.parse().expect("suite exponent"),
            r.parse().expect("suite exponent"),
            n_values,
            method,
        )
    };
    SuiteEntry { name: name.to_string(), config }
}

/// The standard experiment set: row, diagonal, random-sign and
/// product-extension families with `n` up to 64 (brute norms up to 10), and
/// the linear all-ones functional.
pub fn bundled_suite() -> Vec<SuiteEntry> {
    let mut suite = vec![
        entry("row_inf_2_r11_analytic", Family::Row, 2, "inf,2", "1,1", powers_of_two(1, 6), NormMethod::Analytic),
        entry("row_inf_2_r11_ascent", Family::Row, 2, "inf,2", "1,1", powers_of_two(1, 5), NormMethod::Ascent),
        entry("row_3_4_r12", Family::Row, 2, "3,4", "1,2", powers_of_two(1, 6), NormMethod::Analytic),
        entry("diag_inf_inf_r11", Family::Diagonal, 2, "inf,inf", "1,1", powers_of_two(1, 6), NormMethod::Analytic),
        entry("diag_4_4_r11", Family::Diagonal, 2, "4,4", "1,1", powers_of_two(1, 6), NormMethod::Analytic),
        entry("diag_4_2_r11", Family::Diagonal, 2, "4,2", "1,1", powers_of_two(1, 6), NormMethod::Analytic),
        entry("diag_4_2_r42", Family::Diagonal, 2, "4,2", "4,2", powers_of_two(1, 6), NormMethod::Analytic),
        entry("diag3_6_6_6_r111", Family::Diagonal, 3, "6,6,6", "1,1,1", powers_of_two(1, 5), NormMethod::Analytic),
        entry("diag_4_4_r11_ascent", Family::Diagonal, 2, "4,4", "1,1", powers_of_two(1, 5), NormMethod::Ascent),
        entry("ksz_inf_r11_paper_bound", Family::Ksz, 2, "inf,inf", "1,1", powers_of_two(1, 6), NormMethod::PaperBound),
        entry("ksz_4_4_r11_ascent", Family::Ksz, 2, "4,4", "1,1", powers_of_two(1, 5), NormMethod::Ascent),
        entry("prodext_k2_inf_r122_paper_bound", Family::ProductExtension, 3, "inf,inf,inf", "1,2,2", powers_of_two(1, 6), NormMethod::PaperBound),
        entry("prodext_k2_inf_r112_paper_bound", Family::ProductExtension, 3, "inf,inf,inf", "1,1,2", powers_of_two(1, 6), NormMethod::PaperBound),
        entry("prodext_k2_inf_r122_brute", Family::ProductExtension, 3, "inf,inf,inf", "1,2,2", (2..=8).collect(), NormMethod::Brute),
    ];
    for e in suite.iter_mut() {
        if matches!(e.config.family, Family::ProductExtension) {
            e.config.base_arity = Some(2);
        }
        if e.config.family == Family::Ksz && e.config.norm_method == NormMethod::Ascent {
            e.config.draws = 4;
            e.config.restarts = 8;
        }
    }
    let mut ksz = entry("ksz_inf_r11_brute", Family::Ksz, 2, "inf,inf", "1,1", (2..=10).collect(), NormMethod::Brute);
    ksz.config.draws = 50;
    ksz.config.mode = CompareMode::Match;
    suite.push(ksz);
    for (r, p) in [("1", "2"), ("2", "2"), ("1", "inf")] {
        let name = format!("linear_r{r}_p{p}");
        suite.push(entry(&name, Family::Diagonal, 1, p, r, (2..=64).collect(), NormMethod::Analytic));
    }
    suite
}
