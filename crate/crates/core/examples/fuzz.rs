//! Cross-checks the count engine against generic matrices on random graphs
//! for every model.

use rigikit::analysis::{fuzz_equivalence, FuzzConfig, Model};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for model in Model::ALL {
        let d = if model == Model::Direction { 2 } else { 3 };
        let summary = fuzz_equivalence(&FuzzConfig::new(model, d, 50, 2024))?;
        println!(
            "{model:>12}: {}, {} polymatroid checks, {} escalations",
            summary.summary, summary.polymatroid_cases, summary.escalations
        );
        for cx in &summary.counterexamples {
            println!("  case {}: {}", cx.case, cx.reasons.join("; "));
        }
    }
    Ok(())
}
