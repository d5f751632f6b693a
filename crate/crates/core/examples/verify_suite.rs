// Runs a verification suite in-process from a model descriptor.

use lefschetz::cli::report::write_table;
use lefschetz::cli::{run_suite, ModelDescriptor, Status};

const DESCRIPTOR: &str = r#"{
  "N": 2,
  "omega": "i*(dz1^dzb1 + dz2^dzb2)",
  "mode_radius": 1,
  "seed": 7
}"#;

pub fn run_example() -> lefschetz::Result<()> {
    let model = ModelDescriptor::from_json(DESCRIPTOR)?.elaborate()?;
    let records = run_suite(&model, "sl2")?;
    write_table(&records, &mut std::io::stdout()).expect("stdout");
    assert!(records.iter().all(|r| r.status == Status::Pass));
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
