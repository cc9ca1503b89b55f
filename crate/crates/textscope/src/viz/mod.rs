//! Rendering: word clouds as SVG, per-document relevance heatmaps as HTML.

mod cloud;
mod highlight;

pub use cloud::{
    layout_cloud, render_svg, text_extent, CanvasSize, CloudLayout, CloudWord, PlacedWord,
    WordCloudSpec, FONT_MAX_PT, FONT_MIN_PT,
};
pub use highlight::{
    highlight_lrp_html, highlight_tfidf_html, lrp_token_relevances, tfidf_token_values,
};
