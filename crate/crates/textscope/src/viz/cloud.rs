//! Word cloud layout and SVG output.
//!
//! Words are placed on an outward archimedean spiral from the canvas
//! center; the first position whose bounding box hits neither a placed box
//! nor the canvas edge wins. Text extents come from a fixed per-character
//! width table rather than font metrics, so the same spec and seed produce
//! identical bytes on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relevance::ScoreTable;

pub const FONT_MIN_PT: f64 = 11.0;
pub const FONT_MAX_PT: f64 = 44.0;

const SPIRAL_STEP_RAD: f64 = 0.3;
const SPIRAL_GROWTH: f64 = 1.1;
const MAX_SPIRAL_STEPS: usize = 10_000;
/// Minimum gap between placed boxes; keeps them apart even after the SVG
/// rounds coordinates to two decimals.
const COLLISION_PADDING: f64 = 1.0;

const POSITIVE_COLOR: &str = "#2166ac";
const NEGATIVE_COLOR: &str = "#b2182b";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CanvasSize {
    pub width: u32,
    pub height: u32,
}

impl Default for CanvasSize {
    fn default() -> Self {
        CanvasSize {
            width: 900,
            height: 600,
        }
    }
}

/// One cloud entry: a term, its weight (score magnitude) and whether it
/// counts against the class (drawn in the second color).
#[derive(Debug, Clone, PartialEq)]
pub struct CloudWord {
    pub term: String,
    pub weight: f64,
    pub negative: bool,
}

/// Everything needed to lay out one cloud. Entries are sorted by
/// descending weight and capped at `max_words`.
#[derive(Debug, Clone, PartialEq)]
pub struct WordCloudSpec {
    /// Label for the metadata comment, usually the class or cluster name.
    pub title: String,
    /// Scorer name for the metadata comment.
    pub method: String,
    pub entries: Vec<CloudWord>,
    pub max_words: usize,
    pub canvas: CanvasSize,
    pub seed: u64,
}

impl WordCloudSpec {
    /// Builds a spec from a score table: zero scores are dropped, weights
    /// are score magnitudes and negative scores flip the color.
    pub fn from_score_table(
        table: &ScoreTable,
        max_words: usize,
        canvas: CanvasSize,
        seed: u64,
    ) -> Self {
        let mut entries: Vec<CloudWord> = table
            .scores
            .iter()
            .filter(|(_, &s)| s != 0.0)
            .map(|(term, &s)| CloudWord {
                term: term.clone(),
                weight: s.abs(),
                negative: s < 0.0,
            })
            .collect();
        sort_and_cap(&mut entries, max_words);
        WordCloudSpec {
            title: table.class_name.clone(),
            method: table.method.as_str().to_string(),
            entries,
            max_words,
            canvas,
            seed,
        }
    }

    /// Two-sided cloud: group A's words in the positive color, group B's in
    /// the negative color, at most `per_side` words each.
    pub fn two_sided(
        title: &str,
        group_a: &ScoreTable,
        group_b: &ScoreTable,
        per_side: usize,
        canvas: CanvasSize,
        seed: u64,
    ) -> Self {
        let mut entries = Vec::new();
        for (table, negative) in [(group_a, false), (group_b, true)] {
            let mut side: Vec<CloudWord> = table
                .scores
                .iter()
                .filter(|(_, &s)| s > 0.0)
                .map(|(term, &s)| CloudWord {
                    term: term.clone(),
                    weight: s,
                    negative,
                })
                .collect();
            sort_and_cap(&mut side, per_side);
            entries.extend(side);
        }
        sort_and_cap(&mut entries, 2 * per_side);
        WordCloudSpec {
            title: title.to_string(),
            method: group_a.method.as_str().to_string(),
            entries,
            max_words: 2 * per_side,
            canvas,
            seed,
        }
    }
}

fn sort_and_cap(entries: &mut Vec<CloudWord>, max_words: usize) {
    entries.sort_by(|a, b| {
        b.weight
            .partial_cmp(&a.weight)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.term.cmp(&b.term))
    });
    entries.truncate(max_words);
}

/// Approximate character advance in em units. A fixed table keeps layout
/// independent of installed fonts.
fn char_width_em(c: char) -> f64 {
    match c {
        'i' | 'j' | 'l' => 0.30,
        'f' | 't' | 'r' => 0.38,
        'm' | 'w' => 0.85,
        c if c.is_ascii_uppercase() => 0.70,
        _ => 0.55,
    }
}

/// Width and height in pixels of a term at the given font size.
pub fn text_extent(term: &str, font_px: f64) -> (f64, f64) {
    let em: f64 = term.chars().map(char_width_em).sum();
    (em * font_px, font_px)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BBox {
    fn centered(cx: f64, cy: f64, w: f64, h: f64) -> Self {
        BBox {
            x0: cx - w / 2.0,
            y0: cy - h / 2.0,
            x1: cx + w / 2.0,
            y1: cy + h / 2.0,
        }
    }

    fn inflate(&self, pad: f64) -> BBox {
        BBox {
            x0: self.x0 - pad,
            y0: self.y0 - pad,
            x1: self.x1 + pad,
            y1: self.y1 + pad,
        }
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    fn inside(&self, canvas: CanvasSize) -> bool {
        self.x0 >= 0.0
            && self.y0 >= 0.0
            && self.x1 <= canvas.width as f64
            && self.y1 <= canvas.height as f64
    }
}

/// A placed word: box center plus font size and color side.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedWord {
    pub term: String,
    pub x: f64,
    pub y: f64,
    pub font_px: f64,
    pub negative: bool,
    pub bbox: BBox,
}

/// Layout result, ready for [`render_svg`].
#[derive(Debug, Clone, PartialEq)]
pub struct CloudLayout {
    pub title: String,
    pub method: String,
    pub canvas: CanvasSize,
    pub seed: u64,
    pub words: Vec<PlacedWord>,
}

/// Places the words of a [`WordCloudSpec`]. Font size grows with the
/// square root of the relative weight; words that find no free spot within
/// the bounded spiral search are dropped with a warning.
pub fn layout_cloud(spec: &WordCloudSpec) -> Result<CloudLayout> {
    let max_weight = spec.entries.first().map(|e| e.weight).unwrap_or(0.0);
    if max_weight <= 0.0 {
        return Err(Error::NothingToDraw);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let cx = spec.canvas.width as f64 / 2.0;
    let cy = spec.canvas.height as f64 / 2.0;

    let mut words: Vec<PlacedWord> = Vec::with_capacity(spec.entries.len());
    for entry in spec.entries.iter().take(spec.max_words) {
        let font_px =
            FONT_MIN_PT + (FONT_MAX_PT - FONT_MIN_PT) * (entry.weight / max_weight).sqrt();
        let (w, h) = text_extent(&entry.term, font_px);
        let start_angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);

        let mut placed = false;
        for step in 0..MAX_SPIRAL_STEPS {
            let theta = step as f64 * SPIRAL_STEP_RAD;
            let radius = SPIRAL_GROWTH * theta;
            let x = cx + radius * (start_angle + theta).cos();
            let y = cy + radius * (start_angle + theta).sin();
            let bbox = BBox::centered(x, y, w, h);
            if !bbox.inside(spec.canvas) {
                continue;
            }
            let padded = bbox.inflate(COLLISION_PADDING);
            if words.iter().any(|p| p.bbox.intersects(&padded)) {
                continue;
            }
            words.push(PlacedWord {
                term: entry.term.clone(),
                x,
                y,
                font_px,
                negative: entry.negative,
                bbox,
            });
            placed = true;
            break;
        }
        if !placed {
            log::warn!(
                "word cloud `{}`: no room for `{}`, dropping it",
                spec.title,
                entry.term
            );
        }
    }
    Ok(CloudLayout {
        title: spec.title.clone(),
        method: spec.method.clone(),
        canvas: spec.canvas,
        seed: spec.seed,
        words,
    })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn comment_safe(s: &str) -> String {
    // XML comments must not contain "--"
    let mut out = s.to_string();
    while out.contains("--") {
        out = out.replace("--", "-");
    }
    out
}

/// Serializes a layout as a standalone SVG 1.1 document: one `text` element
/// per placed word, plus a metadata comment recording class, method and
/// seed. Output is byte-deterministic.
pub fn render_svg(layout: &CloudLayout) -> String {
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = layout.canvas.width,
        h = layout.canvas.height,
    ));
    svg.push_str(&format!(
        "  <!-- textscope word cloud: class=\"{}\" method=\"{}\" seed={} -->\n",
        comment_safe(&layout.title),
        comment_safe(&layout.method),
        layout.seed,
    ));
    svg.push_str(&format!(
        "  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        layout.canvas.width, layout.canvas.height,
    ));
    for word in &layout.words {
        let color = if word.negative {
            NEGATIVE_COLOR
        } else {
            POSITIVE_COLOR
        };
        // shift from box center down to an approximate baseline
        let baseline = word.y + word.font_px * 0.35;
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"{:.2}\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\"{}\">{}</text>\n",
            word.x,
            baseline,
            word.font_px,
            color,
            xml_escape(&word.term),
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
