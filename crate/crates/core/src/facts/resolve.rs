//! Resolution of test classes to their production classes by name.

use std::collections::{BTreeMap, BTreeSet};

use super::lexer::tokenize;
use super::parser::parse_compilation_unit;
use super::{ProductionFacts, SourceUnit};

/// Index of production classes by simple class name, carrying the method
/// names each declares. Built once per run, read-only afterwards.
#[derive(Debug, Clone, Default)]
pub struct CorpusIndex {
    classes: BTreeMap<String, BTreeSet<String>>,
}

impl CorpusIndex {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn contains(&self, class_name: &str) -> bool {
        self.classes.contains_key(class_name)
    }
}

/// Builds the production index from parsed units. All top-level types of
/// each unit are indexed; methods of nested types are not (the parser
/// skips nested bodies).
pub fn build_corpus_index(units: &[SourceUnit]) -> CorpusIndex {
    let mut classes = BTreeMap::new();
    for unit in units {
        let tokens = tokenize(&unit.raw_text);
        for ty in parse_compilation_unit(&tokens).types {
            let methods: BTreeSet<String> = ty.methods.iter().map(|m| m.name.clone()).collect();
            classes.entry(ty.name).or_insert(methods);
        }
    }
    CorpusIndex { classes }
}

/// Maps a test class name to its production class.
///
/// Candidate names are tried in order: strip a leading `Test`, then a
/// trailing `Test`, `Tests`, or `TestCase`; the first candidate present
/// in the index wins. An unresolved outcome is valid (not an error): the
/// Eager/Lazy Test rules are then skipped and a diagnostic recorded.
pub fn resolve_production_class(test_class_name: &str, index: &CorpusIndex) -> ProductionFacts {
    for candidate in candidate_names(test_class_name) {
        if let Some(methods) = index.classes.get(&candidate) {
            return ProductionFacts {
                class_name: candidate,
                method_names: methods.clone(),
                resolved: true,
            };
        }
    }
    ProductionFacts::unresolved()
}

fn candidate_names(test_class_name: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |name: Option<&str>| {
        if let Some(name) = name {
            if !name.is_empty() && !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        }
    };
    push(test_class_name.strip_prefix("Test"));
    push(test_class_name.strip_suffix("Test"));
    push(test_class_name.strip_suffix("Tests"));
    push(test_class_name.strip_suffix("TestCase"));
    out
}
