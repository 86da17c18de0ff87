use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArlError, ExtendedLabels};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub has_concept: bool,
    pub poc_benefit_vs_scaled_classical: bool,
    pub extrapolation_shows_advantage: bool,
    pub ideal_sim_utility: bool,
    pub noisy_sim_utility: bool,
    pub hardware_utility: bool,
    #[serde(default)]
    pub citations: Vec<String>,
}

impl EvidenceRecord {
    /// Evidence flags in milestone order.
    pub fn flags(&self) -> [bool; 6] {
        [
            self.has_concept,
            self.poc_benefit_vs_scaled_classical,
            self.extrapolation_shows_advantage,
            self.ideal_sim_utility,
            self.noisy_sim_utility,
            self.hardware_utility,
        ]
    }

    pub fn set_flag(&mut self, index: usize, value: bool) {
        match index {
            0 => self.has_concept = value,
            1 => self.poc_benefit_vs_scaled_classical = value,
            2 => self.extrapolation_shows_advantage = value,
            3 => self.ideal_sim_utility = value,
            4 => self.noisy_sim_utility = value,
            5 => self.hardware_utility = value,
            _ => panic!("evidence flag index {index} out of range"),
        }
    }
}

const FLAG_NAMES: [&str; 6] = [
    "has_concept",
    "poc_benefit_vs_scaled_classical",
    "extrapolation_shows_advantage",
    "ideal_sim_utility",
    "noisy_sim_utility",
    "hardware_utility",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArlLevel {
    Arl1,
    Arl2,
    Arl3,
    Arl4a,
    Arl4b,
    Arl5,
}

impl ArlLevel {
    pub const ALL: [ArlLevel; 6] = [
        ArlLevel::Arl1,
        ArlLevel::Arl2,
        ArlLevel::Arl3,
        ArlLevel::Arl4a,
        ArlLevel::Arl4b,
        ArlLevel::Arl5,
    ];

    /// Short form used in tables: `3`, `4a`.
    pub fn short(self) -> &'static str {
        match self {
            ArlLevel::Arl1 => "1",
            ArlLevel::Arl2 => "2",
            ArlLevel::Arl3 => "3",
            ArlLevel::Arl4a => "4a",
            ArlLevel::Arl4b => "4b",
            ArlLevel::Arl5 => "5",
        }
    }
}

impl fmt::Display for ArlLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ARL{}", self.short())
    }
}

impl FromStr for ArlLevel {
    type Err = ArlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix("ARL").or_else(|| t.strip_prefix("arl")).unwrap_or(t);
        let t = t.trim_start_matches(['-', ' ']);
        ArlLevel::ALL
            .into_iter()
            .find(|l| l.short().eq_ignore_ascii_case(t))
            .ok_or_else(|| ArlError::UnknownLevel(s.to_string()))
    }
}

impl Serialize for ArlLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ArlLevel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Level reached by the longest unbroken prefix of evidence flags.
pub fn assess_arl(e: &EvidenceRecord) -> Result<ArlLevel, ArlError> {
    if !e.has_concept {
        return Err(ArlError::Unclassifiable);
    }
    let prefix = e.flags().iter().take_while(|&&f| f).count();
    Ok(ArlLevel::ALL[prefix - 1])
}

/// Flags set above the first missing milestone.
pub fn evidence_gaps(e: &EvidenceRecord) -> Vec<String> {
    let flags = e.flags();
    let Some(first_missing) = flags.iter().position(|&f| !f) else {
        return Vec::new();
    };
    (first_missing + 1..flags.len())
        .filter(|&i| flags[i])
        .map(|i| format!("{} set without {}", FLAG_NAMES[i], FLAG_NAMES[first_missing]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArlAssessment {
    pub id: String,
    pub name: String,
    pub level: ArlLevel,
    pub labels: ExtendedLabels,
    pub evidence: EvidenceRecord,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inconsistencies: Vec<String>,
}

impl ArlAssessment {
    pub fn new(id: &str, name: &str, labels: ExtendedLabels, evidence: EvidenceRecord) -> Result<Self, ArlError> {
        let level = assess_arl(&evidence)?;
        Ok(ArlAssessment {
            id: id.to_string(),
            name: name.to_string(),
            level,
            labels,
            inconsistencies: evidence_gaps(&evidence),
            evidence,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn evidence(flags: [bool; 6]) -> EvidenceRecord {
        let mut e = EvidenceRecord::default();
        for (i, f) in flags.into_iter().enumerate() {
            e.set_flag(i, f);
        }
        e
    }

    #[test]
    fn milestone_examples() {
        assert_eq!(assess_arl(&evidence([true, false, false, false, false, false])).unwrap(), ArlLevel::Arl1);
        assert_eq!(assess_arl(&evidence([true, true, true, false, false, false])).unwrap(), ArlLevel::Arl3);
        assert_eq!(assess_arl(&evidence([true, true, false, false, false, false])).unwrap(), ArlLevel::Arl2);
        assert_eq!(assess_arl(&evidence([true; 6])).unwrap(), ArlLevel::Arl5);
        assert!(matches!(assess_arl(&evidence([false, true, true, true, true, true])), Err(ArlError::Unclassifiable)));
    }

    #[test]
    fn gaps_cap_and_are_reported() {
        let e = evidence([true, true, false, true, false, true]);
        assert_eq!(assess_arl(&e).unwrap(), ArlLevel::Arl2);
        let gaps = evidence_gaps(&e);
        assert_eq!(gaps.len(), 2);
        assert!(gaps[0].starts_with("ideal_sim_utility"));
    }

    #[test]
    fn level_order_and_text() {
        assert!(ArlLevel::Arl4a < ArlLevel::Arl4b && ArlLevel::Arl4b < ArlLevel::Arl5);
        for l in ArlLevel::ALL {
            assert_eq!(l.to_string().parse::<ArlLevel>().unwrap(), l);
        }
        assert_eq!("ARL-4b".parse::<ArlLevel>().unwrap(), ArlLevel::Arl4b);
        assert_eq!(serde_json::to_string(&ArlLevel::Arl4a).unwrap(), "\"ARL4a\"");
    }

    proptest! {
        #[test]
        fn adding_evidence_never_lowers_level(flags in prop::array::uniform6(any::<bool>()), idx in 0usize..6) {
            let before = evidence(flags);
            let mut after = before.clone();
            after.set_flag(idx, true);
            match (assess_arl(&before), assess_arl(&after)) {
                (Ok(a), Ok(b)) => prop_assert!(b >= a),
                (Err(_), _) => {}
                (Ok(_), Err(_)) => prop_assert!(false, "classification lost"),
            }
        }
    }
}
