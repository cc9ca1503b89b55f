//! Comparing two date ranges of a news-archive file.
//!
//! Writes a small archive-API-shaped JSON file, loads it through the
//! archive adapter, and contrasts the week of an event against the weeks
//! before it with distinctive words in both directions. Words tied to the
//! event score high; words frequent in both ranges (weekday names, boiler-
//! plate) score zero.
//!
//! ```bash
//! cargo run --example compare_groups
//! ```

use std::fs;

use textscope::pipeline::{run_compare, CorpusFormat, RunConfig};

fn archive_json() -> serde_json::Value {
    let mut docs = Vec::new();
    // event week: inauguration coverage (plus the weekday-name trap)
    for day in 16..=22 {
        for j in 0..3 {
            docs.push(serde_json::json!({
                "_id": format!("week-{day:02}-{j}"),
                "snippet": format!(
                    "inauguration crowds and protest marches reported on tuesday item {j}"
                ),
                "headline": { "main": "capitol events" },
                "pub_date": format!("2017-01-{day:02}T09:00:00+0000"),
            }));
        }
    }
    // three weeks prior: holiday coverage, same weekday mentions
    for day in 1..=15 {
        docs.push(serde_json::json!({
            "_id": format!("prior-{day:02}"),
            "snippet": "holiday sales and yearly outlook published on tuesday",
            "headline": { "main": "business brief" },
            "pub_date": format!("2017-01-{day:02}T09:00:00+0000"),
        }));
    }
    serde_json::json!({ "response": { "docs": docs } })
}

fn main() -> textscope::Result<()> {
    let out = std::env::temp_dir().join("textscope-examples/compare_groups");
    fs::create_dir_all(&out).expect("create output dir");
    let input = out.join("archive.json");
    fs::write(
        &input,
        serde_json::to_string_pretty(&archive_json()).unwrap(),
    )
    .expect("write archive");

    let config = RunConfig {
        input,
        format: CorpusFormat::Nyt,
        out: out.clone(),
        seed: 17,
        ..RunConfig::default()
    };
    let report = run_compare(
        &config,
        "date:2017-01-16..2017-01-22",
        "date:2017-01-01..2017-01-15",
    )?;

    for path in &report.outputs {
        println!("wrote {}", path.display());
    }

    let table: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out.join("group_a_distinctive.json")).expect("read scores"),
    )
    .unwrap();
    println!("\nevent-week words (group_a):");
    for entry in table["scores"].as_array().unwrap().iter().take(5) {
        println!(
            "  {:<14} {:.3}",
            entry["term"].as_str().unwrap(),
            entry["score"].as_f64().unwrap()
        );
    }
    println!("note: `tuesday` appears in both ranges and scores 0 despite its spikes");
    Ok(())
}
