//! The 19 test-smell kinds, per-method smell reports, and record I/O.

mod rules;
pub mod io;

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use rules::{build_smell_reports, DetectOptions, DEFAULT_VERBOSE_THRESHOLD};

use crate::features::TestId;

/// One of the 19 smell kinds. The declaration order is the canonical
/// order used by every file format, feature schema, and report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SmellKind {
    AssertionRoulette,
    ConditionalTestLogic,
    ConstructorInitialization,
    DefaultTest,
    DuplicateAssert,
    EagerTest,
    EmptyTest,
    GeneralFixture,
    IgnoredTest,
    LazyTest,
    MagicNumberTest,
    MysteryGuest,
    RedundantPrint,
    RedundantAssertion,
    ResourceOptimism,
    SensitiveEquality,
    SleepyTest,
    UnknownTest,
    VerboseTest,
}

impl SmellKind {
    /// All kinds in canonical order.
    pub const ALL: [SmellKind; 19] = [
        SmellKind::AssertionRoulette,
        SmellKind::ConditionalTestLogic,
        SmellKind::ConstructorInitialization,
        SmellKind::DefaultTest,
        SmellKind::DuplicateAssert,
        SmellKind::EagerTest,
        SmellKind::EmptyTest,
        SmellKind::GeneralFixture,
        SmellKind::IgnoredTest,
        SmellKind::LazyTest,
        SmellKind::MagicNumberTest,
        SmellKind::MysteryGuest,
        SmellKind::RedundantPrint,
        SmellKind::RedundantAssertion,
        SmellKind::ResourceOptimism,
        SmellKind::SensitiveEquality,
        SmellKind::SleepyTest,
        SmellKind::UnknownTest,
        SmellKind::VerboseTest,
    ];

    /// Position in the canonical order.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|k| *k == self).expect("kind is in ALL")
    }

    /// Stable snake_case identifier used in all file formats.
    pub fn id(self) -> &'static str {
        match self {
            SmellKind::AssertionRoulette => "assertion_roulette",
            SmellKind::ConditionalTestLogic => "conditional_test_logic",
            SmellKind::ConstructorInitialization => "constructor_initialization",
            SmellKind::DefaultTest => "default_test",
            SmellKind::DuplicateAssert => "duplicate_assert",
            SmellKind::EagerTest => "eager_test",
            SmellKind::EmptyTest => "empty_test",
            SmellKind::GeneralFixture => "general_fixture",
            SmellKind::IgnoredTest => "ignored_test",
            SmellKind::LazyTest => "lazy_test",
            SmellKind::MagicNumberTest => "magic_number_test",
            SmellKind::MysteryGuest => "mystery_guest",
            SmellKind::RedundantPrint => "redundant_print",
            SmellKind::RedundantAssertion => "redundant_assertion",
            SmellKind::ResourceOptimism => "resource_optimism",
            SmellKind::SensitiveEquality => "sensitive_equality",
            SmellKind::SleepyTest => "sleepy_test",
            SmellKind::UnknownTest => "unknown_test",
            SmellKind::VerboseTest => "verbose_test",
        }
    }

    /// Human-readable name for rendered tables.
    pub fn display_name(self) -> &'static str {
        match self {
            SmellKind::AssertionRoulette => "Assertion Roulette",
            SmellKind::ConditionalTestLogic => "Conditional Test Logic",
            SmellKind::ConstructorInitialization => "Constructor Initialization",
            SmellKind::DefaultTest => "Default Test",
            SmellKind::DuplicateAssert => "Duplicate Assert",
            SmellKind::EagerTest => "Eager Test",
            SmellKind::EmptyTest => "Empty Test",
            SmellKind::GeneralFixture => "General Fixture",
            SmellKind::IgnoredTest => "Ignored Test",
            SmellKind::LazyTest => "Lazy Test",
            SmellKind::MagicNumberTest => "Magic Number Test",
            SmellKind::MysteryGuest => "Mystery Guest",
            SmellKind::RedundantPrint => "Redundant Print",
            SmellKind::RedundantAssertion => "Redundant Assertion",
            SmellKind::ResourceOptimism => "Resource Optimism",
            SmellKind::SensitiveEquality => "Sensitive Equality",
            SmellKind::SleepyTest => "Sleepy Test",
            SmellKind::UnknownTest => "Unknown Test",
            SmellKind::VerboseTest => "Verbose Test",
        }
    }

    pub fn from_id(id: &str) -> Option<SmellKind> {
        Self::ALL.iter().copied().find(|k| k.id() == id)
    }
}

impl fmt::Display for SmellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for SmellKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for SmellKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let id = String::deserialize(deserializer)?;
        SmellKind::from_id(&id)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown smell kind `{id}`")))
    }
}

/// Presence/absence of every smell kind, as a compact bit set.
///
/// Serializes as a map over all 19 kinds in canonical order (not
/// alphabetical), which JSON consumers rely on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SmellSet {
    bits: u32,
}

impl SmellSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, kind: SmellKind) {
        self.bits |= 1 << kind.index();
    }

    pub fn set(&mut self, kind: SmellKind, present: bool) {
        if present {
            self.insert(kind);
        } else {
            self.bits &= !(1 << kind.index());
        }
    }

    pub fn contains(&self, kind: SmellKind) -> bool {
        self.bits & (1 << kind.index()) != 0
    }

    /// Number of kinds present.
    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Kinds present, in canonical order.
    pub fn present(&self) -> impl Iterator<Item = SmellKind> + '_ {
        SmellKind::ALL.into_iter().filter(|k| self.contains(*k))
    }

    pub fn from_kinds<I: IntoIterator<Item = SmellKind>>(kinds: I) -> Self {
        let mut set = SmellSet::new();
        for k in kinds {
            set.insert(k);
        }
        set
    }
}

impl Serialize for SmellSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(SmellKind::ALL.len()))?;
        for kind in SmellKind::ALL {
            map.serialize_entry(kind.id(), &self.contains(kind))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SmellSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;
        impl<'de> Visitor<'de> for SetVisitor {
            type Value = SmellSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map of smell kind ids to booleans")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<SmellSet, A::Error> {
                let mut set = SmellSet::new();
                while let Some((key, value)) = access.next_entry::<String, bool>()? {
                    let kind = SmellKind::from_id(&key).ok_or_else(|| {
                        serde::de::Error::custom(format!("unknown smell kind `{key}`"))
                    })?;
                    set.set(kind, value);
                }
                Ok(set)
            }
        }
        deserializer.deserialize_map(SetVisitor)
    }
}

/// Scope of a finding: method-level evidence or a class-level condition
/// marking every test method of the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingScope {
    Method,
    Class,
}

/// One detected smell with its evidence lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmellFinding {
    pub kind: SmellKind,
    pub test_id: TestId,
    pub evidence_lines: Vec<usize>,
    pub scope: FindingScope,
}

/// Full report for one test method: presence of all 19 kinds, evidence,
/// and the rules skipped because production code was unresolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmellReport {
    pub test_id: TestId,
    pub presence: SmellSet,
    pub findings: Vec<SmellFinding>,
    pub smells_count: usize,
    /// Rules evaluated as absent only because they could not run
    /// (unresolved production class): Eager/Lazy Test.
    pub skipped_rules: Vec<SmellKind>,
    /// Lines of code of the test method (signature through closing brace,
    /// blank/comment-only lines excluded).
    pub loc: usize,
}

impl SmellReport {
    /// Presence as a canonical-order map, for JSON-ish consumers.
    pub fn presence_map(&self) -> BTreeMap<&'static str, bool> {
        SmellKind::ALL.iter().map(|k| (k.id(), self.presence.contains(*k))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_19_kinds_with_stable_ids() {
        assert_eq!(SmellKind::ALL.len(), 19);
        for (i, kind) in SmellKind::ALL.iter().enumerate() {
            assert_eq!(kind.index(), i);
            assert_eq!(SmellKind::from_id(kind.id()), Some(*kind));
        }
    }

    #[test]
    fn set_round_trips_and_counts() {
        let mut set = SmellSet::new();
        set.insert(SmellKind::SleepyTest);
        set.insert(SmellKind::SensitiveEquality);
        assert_eq!(set.count(), 2);
        assert!(set.contains(SmellKind::SleepyTest));
        assert!(!set.contains(SmellKind::EagerTest));
        let present: Vec<SmellKind> = set.present().collect();
        assert_eq!(present, vec![SmellKind::SensitiveEquality, SmellKind::SleepyTest]);
    }

    #[test]
    fn serialization_uses_canonical_order_not_alphabetical() {
        let set = SmellSet::from_kinds([SmellKind::SleepyTest]);
        let json = serde_json::to_string(&set).unwrap();
        // RedundantPrint precedes RedundantAssertion in canonical order.
        let print_pos = json.find("redundant_print").unwrap();
        let assertion_pos = json.find("redundant_assertion").unwrap();
        assert!(print_pos < assertion_pos);
        assert!(json.starts_with("{\"assertion_roulette\":"));
        let back: SmellSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn unknown_kind_id_is_rejected() {
        assert!(serde_json::from_str::<SmellKind>("\"flaky_sense\"").is_err());
        assert_eq!(SmellKind::from_id("sleepy_test"), Some(SmellKind::SleepyTest));
    }
}
