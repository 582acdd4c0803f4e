//! Smallest number of colours for each of the four kinds of colouring.
//!
//! ```text
//! cargo run --example distinguishing_numbers
//! ```

use distcolour::cert::{minimal_certificate, recheck};
use distcolour::graph::{gen_standard, Family};
use distcolour::params::{minimal, Attainable, SearchConfig, Variant};

fn main() -> distcolour::Result<()> {
    let graphs = [
        ("K4", gen_standard(Family::Complete, 4)?),
        ("P5", gen_standard(Family::Path, 5)?),
        ("C4", gen_standard(Family::Cycle, 4)?),
        ("C6", gen_standard(Family::Cycle, 6)?),
        ("K1,3", gen_standard(Family::Star, 4)?),
        ("K2", gen_standard(Family::Complete, 2)?),
    ];
    println!(
        "{:<6} {:>4} {:>4} {:>4} {:>4}",
        "graph", "d", "dc", "di", "dci"
    );
    for (name, g) in &graphs {
        let mut row = format!("{name:<6}");
        for v in Variant::ALL {
            let outcome = minimal(g, v, &SearchConfig::default())?;
            recheck(&minimal_certificate(g, v, &outcome)?)?;
            let value = match Attainable::from(&outcome) {
                Attainable::Value(k) => k.to_string(),
                Attainable::Impossible => "-".to_string(),
            };
            row.push_str(&format!(" {value:>4}"));
        }
        println!("{row}");
    }
    Ok(())
}
