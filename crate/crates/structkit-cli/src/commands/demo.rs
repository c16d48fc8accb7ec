//! `structkit demo-data`: synthetic corpora for trying the pipeline end to
//! end without any external datasets.

use crate::jsonl::write_jsonl;
use crate::DemoDataArgs;
use anyhow::Result;
use structkit::fixtures::fixture_records;
use structkit::record::ALL_TASK_KINDS;

pub fn run(args: &DemoDataArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    for task in ALL_TASK_KINDS {
        let records = fixture_records(task, args.count);
        let name = serde_json::to_string(&task)?.trim_matches('"').to_string();
        let path = args.out_dir.join(format!("{name}.jsonl"));
        write_jsonl(&path, &records)?;
        println!("{}", path.display());
    }
    Ok(())
}
