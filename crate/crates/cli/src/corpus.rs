//! Corpus discovery and detection: walks the test and production source
//! trees, parses every file matching the glob, and evaluates the smell
//! rules per test class. Files that fail to parse are skipped with a
//! diagnostic; they make the run *partial*, never fatal.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use serde::Serialize;
use smellsift_core::facts::{
    build_corpus_index, extract_class_facts, parse_source_text, resolve_production_class,
    SourceUnit,
};
use smellsift_core::smells::{build_smell_reports, DetectOptions, SmellReport};
use walkdir::WalkDir;

use crate::config::RunConfig;
use crate::manifest::CorpusDigest;

/// One unreadable or unparseable source file.
#[derive(Debug, Clone, Serialize)]
pub struct SkippedFile {
    pub path: String,
    pub reason: String,
}

/// What the walk over both source trees found.
#[derive(Debug, Default, Serialize)]
pub struct CorpusDiagnostics {
    pub files_scanned: usize,
    pub files_parsed: usize,
    pub skipped_files: Vec<SkippedFile>,
    pub test_classes: usize,
    pub test_methods: usize,
    /// Test classes whose production class could not be resolved; their
    /// Eager/Lazy Test rules were skipped.
    pub unresolved_production: Vec<String>,
}

pub struct ScannedCorpus {
    pub reports: Vec<SmellReport>,
    pub diagnostics: CorpusDiagnostics,
    /// Digest over every file consumed, in walk order.
    pub digest: String,
}

/// `/`-separated path match supporting `**` (any directories), `*` (any
/// run within a segment), and `?` (one character).
pub fn glob_match(pattern: &str, path: &str) -> bool {
    let pattern_segments: Vec<&str> = pattern.split('/').collect();
    let path_segments: Vec<&str> = path.split('/').collect();
    match_segments(&pattern_segments, &path_segments)
}

fn match_segments(pattern: &[&str], path: &[&str]) -> bool {
    match pattern.first() {
        None => path.is_empty(),
        Some(&"**") => {
            (0..=path.len()).any(|skip| match_segments(&pattern[1..], &path[skip..]))
        }
        Some(segment) => {
            !path.is_empty()
                && match_chars(
                    &segment.chars().collect::<Vec<_>>(),
                    &path[0].chars().collect::<Vec<_>>(),
                )
                && match_segments(&pattern[1..], &path[1..])
        }
    }
}

fn match_chars(pattern: &[char], text: &[char]) -> bool {
    match pattern.first() {
        None => text.is_empty(),
        Some('*') => (0..=text.len()).any(|skip| match_chars(&pattern[1..], &text[skip..])),
        Some('?') => !text.is_empty() && match_chars(&pattern[1..], &text[1..]),
        Some(&c) => !text.is_empty() && text[0] == c && match_chars(&pattern[1..], &text[1..]),
    }
}

fn relative_slash_path(root: &Path, path: &Path) -> String {
    let relative = path.strip_prefix(root).unwrap_or(path);
    let parts: Vec<String> = relative
        .components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect();
    parts.join("/")
}

/// Deterministic walk: files under `root` matching `pattern`, sorted by
/// file name at every directory level.
fn matching_files(root: &Path, pattern: &str) -> Vec<(PathBuf, String)> {
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name().into_iter().flatten() {
        if !entry.file_type().is_file() {
            continue;
        }
        let relative = relative_slash_path(root, entry.path());
        if glob_match(pattern, &relative) {
            files.push((entry.into_path(), relative));
        }
    }
    files
}

/// The project a test file belongs to: the explicit override if given,
/// else the first directory under the test root, else the root's own name.
fn infer_project(root: &Path, relative: &str, override_name: Option<&str>) -> String {
    if let Some(name) = override_name {
        return name.to_string();
    }
    if let Some((first, rest)) = relative.split_once('/') {
        if !rest.is_empty() {
            return first.to_string();
        }
    }
    root.canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "corpus".to_string())
}

/// Walks both roots, parses, resolves production classes, and evaluates
/// every smell rule. Parse failures are recorded, not raised.
pub fn scan_corpus(config: &RunConfig) -> Result<ScannedCorpus> {
    let test_root = config.require_test_root()?;
    if !test_root.is_dir() {
        bail!("test root {} is not a directory", test_root.display());
    }

    let mut diagnostics = CorpusDiagnostics::default();
    let mut digest = CorpusDigest::new();

    // Production side first: its classes feed Eager/Lazy Test resolution.
    let mut production_units: Vec<SourceUnit> = Vec::new();
    if let Some(prod_root) = &config.prod_root {
        if !prod_root.is_dir() {
            bail!("production root {} is not a directory", prod_root.display());
        }
        for (path, relative) in matching_files(prod_root, &config.glob) {
            diagnostics.files_scanned += 1;
            match fs::read_to_string(&path) {
                Ok(text) => {
                    digest.add(&format!("prod/{relative}"), text.as_bytes());
                    match parse_source_text(&path, &text) {
                        Ok(unit) => {
                            diagnostics.files_parsed += 1;
                            production_units.push(unit);
                        }
                        Err(err) => diagnostics.skipped_files.push(SkippedFile {
                            path: relative,
                            reason: err.to_string(),
                        }),
                    }
                }
                Err(err) => diagnostics.skipped_files.push(SkippedFile {
                    path: relative,
                    reason: err.to_string(),
                }),
            }
        }
    }
    let index = build_corpus_index(&production_units);

    let options = DetectOptions {
        verbose_threshold: config.verbose_threshold,
        ..DetectOptions::default()
    };

    let mut reports = Vec::new();
    for (path, relative) in matching_files(test_root, &config.glob) {
        diagnostics.files_scanned += 1;
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(err) => {
                diagnostics
                    .skipped_files
                    .push(SkippedFile { path: relative, reason: err.to_string() });
                continue;
            }
        };
        digest.add(&format!("test/{relative}"), text.as_bytes());
        let unit = match parse_source_text(&path, &text) {
            Ok(unit) => unit,
            Err(err) => {
                diagnostics
                    .skipped_files
                    .push(SkippedFile { path: relative, reason: err.to_string() });
                continue;
            }
        };
        diagnostics.files_parsed += 1;

        let facts = extract_class_facts(&unit);
        if !facts.is_test_class || facts.methods.is_empty() {
            continue;
        }
        diagnostics.test_classes += 1;
        diagnostics.test_methods += facts.methods.len();

        let production = resolve_production_class(&facts.unit.class_name, &index);
        if !production.resolved {
            diagnostics.unresolved_production.push(facts.unit.class_name.clone());
        }

        let project = infer_project(test_root, &relative, config.project.as_deref());
        reports.extend(build_smell_reports(&project, &facts, &production, &options));
    }

    Ok(ScannedCorpus { reports, diagnostics, digest: digest.finish() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_matches_nested_and_flat_java_files() {
        assert!(glob_match("**/*.java", "Foo.java"));
        assert!(glob_match("**/*.java", "a/b/Foo.java"));
        assert!(!glob_match("**/*.java", "a/b/Foo.kt"));
        assert!(glob_match("*.java", "Foo.java"));
        assert!(!glob_match("*.java", "a/Foo.java"));
        assert!(glob_match("src/**/Test?.java", "src/x/y/TestA.java"));
        assert!(!glob_match("src/**/Test?.java", "src/x/y/TestAB.java"));
        assert!(glob_match("**", "anything/at/all"));
    }

    #[test]
    fn star_does_not_cross_directory_separators() {
        assert!(!glob_match("*", "a/b"));
        assert!(glob_match("*/*", "a/b"));
        assert!(glob_match("a*c", "abc"));
        assert!(!glob_match("a*c", "ab/c"));
    }

    #[test]
    fn project_inference_prefers_override_then_subdirectory() {
        let root = Path::new("/tmp");
        assert_eq!(infer_project(root, "proj/Foo.java", Some("named")), "named");
        assert_eq!(infer_project(root, "proj/sub/Foo.java", None), "proj");
        assert_eq!(infer_project(root, "proj/Foo.java", None), "proj");
        // A file directly under the root falls back to the root name.
        assert_eq!(infer_project(root, "Foo.java", None), "tmp");
    }
}
