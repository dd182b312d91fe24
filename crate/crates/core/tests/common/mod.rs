#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use codecoset::{Code, CodeDefinition, Word};
use serde::Deserialize;

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn code(name: &str) -> Code {
    CodeDefinition::from_json(&read_fixture(&format!("codes/{name}.json")))
        .and_then(|d| d.to_code())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[derive(Deserialize)]
pub struct ExpectedBasis {
    #[serde(rename = "N")]
    pub n: Vec<String>,
    #[serde(rename = "G")]
    pub g: Vec<(String, String)>,
}

impl ExpectedBasis {
    pub fn load(name: &str) -> Self {
        serde_json::from_str(&read_fixture(&format!("expected/{name}_basis.json"))).unwrap()
    }

    pub fn n_set(&self, nvars: usize) -> HashSet<Word> {
        self.n.iter().map(|s| word(s, nvars)).collect()
    }

    pub fn g_set(&self, nvars: usize) -> HashSet<(Word, Word)> {
        self.g.iter().map(|(h, t)| (word(h, nvars), word(t, nvars))).collect()
    }
}

#[derive(Deserialize)]
pub struct ExpectedEntry {
    pub vector: Vec<u32>,
    pub flag: u8,
    pub phi_row: Vec<usize>,
}

#[derive(Deserialize)]
pub struct ExpectedMatphi {
    #[serde(rename = "N")]
    pub n: Vec<String>,
    pub table: Vec<ExpectedEntry>,
    pub t: usize,
}

impl ExpectedMatphi {
    pub fn load(name: &str) -> Self {
        serde_json::from_str(&read_fixture(&format!("expected/{name}_matphi.json"))).unwrap()
    }
}

pub fn word(s: &str, nvars: usize) -> Word {
    Word::parse(s, nvars).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn nvars(c: &Code) -> usize {
    c.len() * c.field().degree()
}
