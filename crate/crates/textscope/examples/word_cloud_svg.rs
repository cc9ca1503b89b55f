//! Word cloud rendering from a score table.
//!
//! Font size scales with the square root of the score magnitude, words are
//! placed on an outward spiral with bounding-box collision detection, and
//! negative scores (words speaking against a class) get a second color.
//! The same spec and seed always produce identical bytes.
//!
//! ```bash
//! cargo run --example word_cloud_svg
//! ```

use std::collections::BTreeMap;
use std::fs;

use textscope::relevance::{Method, ScoreTable};
use textscope::viz::{layout_cloud, render_svg, CanvasSize, WordCloudSpec};

fn main() -> textscope::Result<()> {
    let out = std::env::temp_dir().join("textscope-examples/word_cloud_svg");
    fs::create_dir_all(&out).expect("create output dir");

    let mut scores = BTreeMap::new();
    for (term, score) in [
        ("adenocarcinoma", 5.2),
        ("lung", 4.9),
        ("egfr", 3.4),
        ("nsclc", 3.1),
        ("smoking", 2.2),
        ("nodules", 1.7),
        ("patients", 1.4),
        ("staging", 1.1),
        ("breast", -2.6),
        ("prostate", -1.9),
    ] {
        scores.insert(term.to_string(), score);
    }
    let table = ScoreTable {
        class_name: "lung".into(),
        method: Method::Lrp,
        scores,
    };

    let spec = WordCloudSpec::from_score_table(
        &table,
        50,
        CanvasSize {
            width: 700,
            height: 450,
        },
        4242,
    );
    let layout = layout_cloud(&spec)?;
    println!(
        "placed {} of {} words:",
        layout.words.len(),
        spec.entries.len()
    );
    for word in &layout.words {
        println!(
            "  {:<16} {:>5.1}px at ({:>6.1}, {:>6.1}){}",
            word.term,
            word.font_px,
            word.x,
            word.y,
            if word.negative { "  [negative]" } else { "" }
        );
    }

    let path = out.join("lung_lrp.svg");
    fs::write(&path, render_svg(&layout)).expect("write svg");
    println!("\ncloud written to {}", path.display());
    Ok(())
}
