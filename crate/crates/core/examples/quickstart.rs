//! Evaluate three selectors on the generated wealth dataset and print the
//! curve metrics next to the overlap-stability indices.
//!
//! Run: cargo run -p fsdem-core --example quickstart

use fsdem_core::data::{generate_wealth_dummy, NoiseSpec};
use fsdem_core::evaluators::{measure_curve, EvaluatorConfig, MeasureId};
use fsdem_core::harness::run_stability_study;
use fsdem_core::metrics::{fsdem_score, stability_score, MetricRange};
use fsdem_core::selectors::{rank, SelectorConfig, SelectorId};

fn main() {
    let data = generate_wealth_dummy(500, 42).expect("n >= 10");
    let evaluator = EvaluatorConfig {
        seed: 7,
        ..EvaluatorConfig::new(MeasureId::Accuracy)
    };
    let range = MetricRange::new(1, data.d() as u32).expect("valid range");
    let ks: Vec<u32> = (range.a()..=range.b()).collect();

    println!(
        "{:10} {:>8} {:>10} {:>10} {:>10}",
        "selector", "fsdem", "stability", "nogueira", "kuncheva"
    );
    for selector_id in [SelectorId::Random, SelectorId::InfoGain, SelectorId::Chi2] {
        let selector = SelectorConfig::new(selector_id).with_seed(7);
        let ranking = rank(&data, &selector).expect("selector runs");
        let curve = measure_curve(&data, &ranking, &evaluator, &ks).expect("curve builds");

        // Overlap indices over 10 noisy repetitions at half the features.
        let study = run_stability_study(
            &data,
            &selector,
            10,
            &NoiseSpec {
                level: 0.1,
                seed: 7,
            },
            data.d() / 2,
        )
        .expect("study runs");

        println!(
            "{:10} {:>8.4} {:>+10.4} {:>+10.4} {:>+10.4}",
            selector_id.to_string(),
            fsdem_score(&curve, &range).expect("in range"),
            stability_score(&curve, &range).expect("in range"),
            study.nogueira,
            study.kuncheva,
        );
    }
}
