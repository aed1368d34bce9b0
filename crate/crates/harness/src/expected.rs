//! Expected values per row, read from a TOML data file.

use serde::Deserialize;
use std::path::Path;

/// The data file shipped with the crate.
pub const BUILTIN: &str = include_str!("../data/expected.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct ExpectedFile {
    pub schema: u32,
    #[serde(rename = "row")]
    pub rows: Vec<RowExpect>,
}

/// A value together with where it was transcribed from.
#[derive(Clone, Debug, Deserialize)]
pub struct Cited<T> {
    pub value: T,
    pub cite: String,
}

/// The linear system `|I^e(d)|` of forms of degree `d` with multiplicity `e`
/// along the surface, and its dimension `h^0`.
#[derive(Clone, Debug, Deserialize)]
pub struct SystemExpect {
    pub degree: u32,
    pub multiplicity: u32,
    pub dimension: i64,
    pub cite: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ImageExpect {
    pub ambient: i64,
    pub dim: i64,
    pub degree: i64,
    pub quadrics: Option<i64>,
    pub cite: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ThreefoldExpect {
    pub dim: i64,
    pub degree: i64,
    pub sectional_genus: i64,
    pub cubics: i64,
    pub singular_points: i64,
    pub cite: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct LinkedExpect {
    pub degree: i64,
    pub singular_points: i64,
    pub cite: String,
}

/// Everything known about one row.
#[derive(Clone, Debug, Deserialize)]
pub struct RowExpect {
    pub tag: String,
    pub label: String,
    pub system: SystemExpect,
    pub degree: Cited<i64>,
    pub sectional_genus: Option<Cited<i64>>,
    pub model_sectional_genus: Option<Cited<i64>>,
    pub h0_cubics: Cited<i64>,
    pub nodes: Cited<i64>,
    pub h0_quintics: Option<Cited<i64>>,
    pub conormal_difference: Option<Cited<i64>>,
    pub unrestricted_multidegree: Option<Cited<Vec<u64>>>,
    pub multidegree: Cited<Vec<u64>>,
    pub fiber: Cited<[i64; 4]>,
    pub image: ImageExpect,
    pub threefold: Option<ThreefoldExpect>,
    pub linked: Option<LinkedExpect>,
    pub delta: Cited<u32>,
    pub inverse_multidegree: Option<Cited<Vec<u64>>>,
    pub base_degree: Cited<i64>,
    pub base_genus: Cited<i64>,
    pub base_degree_red: Cited<i64>,
    pub base_genus_red: Cited<i64>,
    pub h0_normal: Cited<i64>,
    pub h0_normal_rel: Cited<i64>,
    pub lines: Cited<i64>,
    pub self_intersection: Option<Cited<i64>>,
}

impl ExpectedFile {
    pub fn parse(text: &str) -> anyhow::Result<ExpectedFile> {
        let file: ExpectedFile = toml::from_str(text)?;
        anyhow::ensure!(file.schema == 1, "unsupported expected-value schema {}", file.schema);
        Ok(file)
    }

    pub fn builtin() -> ExpectedFile {
        ExpectedFile::parse(BUILTIN).expect("bundled expected values parse")
    }

    pub fn load(path: &Path) -> anyhow::Result<ExpectedFile> {
        ExpectedFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn row(&self, tag: &str) -> Option<&RowExpect> {
        self.rows.iter().find(|r| r.tag.eq_ignore_ascii_case(tag))
    }
}
