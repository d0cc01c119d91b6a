//! The limited-growth case worked step by step, with and without the
//! moonshot detector package.
//!
//!     cargo run --example walkthrough

use techrace::scenario::{walkthrough, PresetCatalog};

fn main() -> techrace::Result<()> {
    let w = walkthrough(&PresetCatalog::load()?)?;
    print!("{w}");
    Ok(())
}
