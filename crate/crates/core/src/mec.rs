//! Edge-compute site candidacy.
//!
//! Distribution sites fall into two broad cases: passive sites holding only
//! unpowered optical distribution gear (splitters, multiplexers), and active
//! sites whose powered access node already enjoys an Ethernet uplink. Active
//! sites come with power, space, and connectivity already in place, which
//! makes them the natural starting points for hosting compute. Evaluation
//! checks a demand against three criteria — space, power, network — and
//! names the upgrade each failed criterion would need.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::model::{FunctionalGroup, Model, SpaceClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MecError {
    #[error("E-NO-SUCH-SITE: no site with id `{0}`")]
    NoSuchSite(String),
}

/// Distribution-site classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    /// Only unpowered distribution elements (optical mux/demux, power
    /// splitters): no supply, no uplink, nothing to piggyback on.
    CaseAPassive,
    /// A powered access node (MSAN, DSLAM, OLT, ONU, CMTS, Ethernet switch)
    /// at a site with an Ethernet uplink.
    CaseBActive,
    Other,
}

impl Classification {
    pub fn token(&self) -> &'static str {
        match self {
            Classification::CaseAPassive => "CaseA-passive",
            Classification::CaseBActive => "CaseB-active",
            Classification::Other => "Other",
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// What a prospective compute deployment needs from a site.
#[derive(Debug, Clone, PartialEq)]
pub struct MecDemand {
    pub required_power_w: f64,
    /// Minimum space level; `None` waives the space criterion.
    pub required_space_class: Option<SpaceClass>,
    pub requires_ethernet: bool,
}

impl Default for MecDemand {
    fn default() -> Self {
        MecDemand {
            required_power_w: 0.0,
            required_space_class: None,
            requires_ethernet: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Criterion {
    Space,
    Power,
    Network,
}

impl Criterion {
    pub fn token(&self) -> &'static str {
        match self {
            Criterion::Space => "space",
            Criterion::Power => "power",
            Criterion::Network => "network",
        }
    }
}

impl Serialize for Criterion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// Remedies, one per failable criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Upgrade {
    ProvidePower,
    InstallEthernetUplink,
    ExpandSpace,
}

impl Upgrade {
    pub fn token(&self) -> &'static str {
        match self {
            Upgrade::ProvidePower => "provide-power",
            Upgrade::InstallEthernetUplink => "install-ethernet-uplink",
            Upgrade::ExpandSpace => "expand-space",
        }
    }
}

impl Serialize for Upgrade {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// One criterion's verdict, with what was found against what was asked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionCheck {
    pub criterion: Criterion,
    pub passed: bool,
    pub measured: String,
    pub required: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidacyReport {
    pub site_id: String,
    pub classification: Classification,
    pub criteria: Vec<CriterionCheck>,
    pub upgrades: Vec<Upgrade>,
    pub eligible: bool,
    /// Spare power after the demand is served; negative when short. Used by
    /// the ranking (not serialized separately from the power row).
    #[serde(skip)]
    pub residual_power_w: f64,
}

/// Comparable footprint levels, smallest first. `customer-premises` and
/// `other` carry no inherent size and compare only by exact declaration.
fn space_rank(class: SpaceClass) -> Option<u8> {
    match class {
        SpaceClass::Pedestal => Some(1),
        SpaceClass::Cabinet => Some(2),
        SpaceClass::Vault => Some(3),
        SpaceClass::StreetNode => Some(4),
        SpaceClass::ServiceRoom => Some(5),
        SpaceClass::Headend => Some(6),
        SpaceClass::CentralOffice => Some(7),
        SpaceClass::CustomerPremises | SpaceClass::Other => None,
    }
}

fn space_satisfies(site: SpaceClass, required: SpaceClass) -> bool {
    match (space_rank(site), space_rank(required)) {
        (Some(have), Some(need)) => have >= need,
        // Unranked classes match only themselves.
        _ => site == required,
    }
}

const ACCESS_NODE_GROUPS: [FunctionalGroup; 6] = [
    FunctionalGroup::Msan,
    FunctionalGroup::Dslam,
    FunctionalGroup::Olt,
    FunctionalGroup::Onu,
    FunctionalGroup::Cmts,
    FunctionalGroup::EthernetSwitch,
];

/// Classify a distribution site from its own contents.
pub fn classify_distribution(model: &Model, site_id: &str) -> Result<Classification, MecError> {
    let site = model
        .site(site_id)
        .ok_or_else(|| MecError::NoSuchSite(site_id.to_string()))?;
    let hosted: Vec<_> = model.elements().filter(|e| e.site_id == site_id).collect();

    let distribution_only = !hosted.is_empty()
        && hosted.iter().all(|e| {
            !e.powered
                && !e.functional_groups.is_empty()
                && e.functional_groups
                    .iter()
                    .all(|g| matches!(g, FunctionalGroup::OmOd | FunctionalGroup::PowerSplitter))
        });
    if distribution_only {
        return Ok(Classification::CaseAPassive);
    }

    let has_access_node = hosted
        .iter()
        .any(|e| e.powered && ACCESS_NODE_GROUPS.iter().any(|g| e.has_group(*g)));
    if site.has_ethernet_uplink && has_access_node {
        return Ok(Classification::CaseBActive);
    }

    Ok(Classification::Other)
}

/// Check one site against a demand.
pub fn evaluate_candidacy(
    model: &Model,
    site_id: &str,
    demand: &MecDemand,
) -> Result<CandidacyReport, MecError> {
    let site = model
        .site(site_id)
        .ok_or_else(|| MecError::NoSuchSite(site_id.to_string()))?;
    let classification = classify_distribution(model, site_id)?;

    let space_ok = match demand.required_space_class {
        Some(required) => space_satisfies(site.space_class, required),
        None => true,
    };
    let space = CriterionCheck {
        criterion: Criterion::Space,
        passed: space_ok,
        measured: site.space_class.token().to_string(),
        required: match demand.required_space_class {
            Some(required) if space_rank(required).is_some() => {
                format!("{} or larger", required.token())
            }
            Some(required) => format!("{} (exact)", required.token()),
            None => "none".to_string(),
        },
    };

    let residual_power_w = if site.has_power {
        site.power_headroom_w - demand.required_power_w
    } else {
        -demand.required_power_w
    };
    let power_ok = site.has_power && site.power_headroom_w >= demand.required_power_w;
    let power = CriterionCheck {
        criterion: Criterion::Power,
        passed: power_ok,
        measured: if site.has_power {
            format!("headroom {} W", site.power_headroom_w)
        } else {
            "no power supply".to_string()
        },
        required: format!("{} W", demand.required_power_w),
    };

    let network_ok = !demand.requires_ethernet || site.has_ethernet_uplink;
    let network = CriterionCheck {
        criterion: Criterion::Network,
        passed: network_ok,
        measured: if site.has_ethernet_uplink {
            "ethernet uplink present".to_string()
        } else {
            "no ethernet uplink".to_string()
        },
        required: if demand.requires_ethernet {
            "ethernet uplink".to_string()
        } else {
            "none".to_string()
        },
    };

    let mut upgrades = Vec::new();
    if !power_ok {
        upgrades.push(Upgrade::ProvidePower);
    }
    if !network_ok {
        upgrades.push(Upgrade::InstallEthernetUplink);
    }
    if !space_ok {
        upgrades.push(Upgrade::ExpandSpace);
    }
    let eligible = upgrades.is_empty();

    Ok(CandidacyReport {
        site_id: site_id.to_string(),
        classification,
        criteria: vec![space, power, network],
        upgrades,
        eligible,
        residual_power_w,
    })
}

/// Evaluate every site and order the reports: eligible sites first by
/// descending residual headroom, then fewest upgrades, then id; ineligible
/// sites by fewest upgrades, then id.
pub fn rank_sites(model: &Model, demand: &MecDemand) -> Vec<CandidacyReport> {
    let site_ids: BTreeSet<&str> = model.sites().map(|s| s.id.as_str()).collect();
    let mut reports: Vec<CandidacyReport> = site_ids
        .into_iter()
        .map(|id| evaluate_candidacy(model, id, demand).expect("site ids come from the model"))
        .collect();
    reports.sort_by(|a, b| {
        b.eligible
            .cmp(&a.eligible)
            .then_with(|| {
                if a.eligible {
                    b.residual_power_w.total_cmp(&a.residual_power_w)
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .then_with(|| a.upgrades.len().cmp(&b.upgrades.len()))
            .then_with(|| a.site_id.cmp(&b.site_id))
    });
    reports
}
