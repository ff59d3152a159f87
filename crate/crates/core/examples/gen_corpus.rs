//! Prints the generated corpus entries; their text must match the files
//! under corpus/.

use sblab::experiments::corpus::{random_problem, RANDOM_ENTRIES};

fn main() -> sblab::Result<()> {
    for (name, seed, nvars) in RANDOM_ENTRIES {
        let spec = random_problem(seed, nvars)?;
        println!("# {name}.txt\n# generated from seed {seed} by corpus::random_problem\n{}", spec.to_text());
    }
    Ok(())
}
