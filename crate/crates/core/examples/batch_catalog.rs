//! Distinguishing numbers for every graph in a directory of graph6 files.
//!
//! ```text
//! cargo run --example batch_catalog -- path/to/dir
//! ```
//!
//! Without an argument, uses the small graphs shipped with the tests.

use std::path::PathBuf;

use distcolour::cli::{cmd_batch, RunConfig};

fn main() -> distcolour::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data"));
    let config = RunConfig {
        input: Some(dir),
        ..RunConfig::default()
    };
    let out = cmd_batch(&config)?;
    println!("{}", out.summary);
    Ok(())
}
