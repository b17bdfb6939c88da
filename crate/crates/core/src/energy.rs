//! Interval energy attribution.
//!
//! Measured power comes in as piecewise-constant profiles (CSV, one average
//! per sample window). Energy over a request interval is the sum of
//! `avg_power_w × overlap_seconds / 3600` per sample. Powered elements
//! without a profile fall back to their rated draw and are flagged as such.
//! Segment capture comes from [`crate::recompose::serial_recomposition`];
//! elements straddling a subsumed bound are divided between the two sides
//! per the split policy. Reports conserve energy exactly — segment totals
//! plus the uncaptured remainder equal the overall total, and likewise for
//! operator totals — and echo each profile's measurement location and dates
//! verbatim.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use crate::model::{Model, NetworkElement, ReferencePoint};
use crate::recompose::CoverageResult;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnergyError {
    #[error("E-PROFILE-CSV: {0}")]
    ProfileCsv(String),
    #[error("E-BAD-TIMESTAMP: `{0}` is not an RFC 3339 timestamp")]
    BadTimestamp(String),
    #[error("E-BAD-SAMPLE: {0}")]
    BadSample(String),
    #[error("E-DUP-PROFILE: more than one profile for element `{0}`")]
    DuplicateProfile(String),
    #[error("E-BAD-INTERVAL: the interval must not end before it starts")]
    BadInterval,
    #[error("E-UNKNOWN-ELEMENT: power profile references unknown element `{0}`")]
    UnknownElement(String),
    #[error("E-FRACTIONS-INVALID: {0}")]
    FractionsInvalid(String),
    #[error("E-SPLIT-DENIED: element `{0}` straddles `{1}` and the split policy denies division")]
    SplitDenied(String, String),
}

/// One measured window: constant average power over [start, end).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSample {
    pub start_utc: String,
    pub end_utc: String,
    pub avg_power_w: f64,
    #[serde(skip)]
    pub start: i64,
    #[serde(skip)]
    pub end: i64,
}

/// All samples for one element: sorted by start, non-overlapping, with the
/// measurement's provenance (location free text, first/last dates).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerProfile {
    pub element_id: String,
    pub measurement_location: String,
    pub samples: Vec<PowerSample>,
    pub first_utc: String,
    pub last_utc: String,
}

impl PowerProfile {
    /// Sort and check samples; derive the measurement dates.
    pub fn new(
        element_id: String,
        measurement_location: String,
        mut samples: Vec<PowerSample>,
    ) -> Result<PowerProfile, EnergyError> {
        for s in &samples {
            if s.end <= s.start {
                return Err(EnergyError::BadSample(format!(
                    "sample for `{element_id}` ends at or before its start ({} .. {})",
                    s.start_utc, s.end_utc
                )));
            }
            if !s.avg_power_w.is_finite() || s.avg_power_w < 0.0 {
                return Err(EnergyError::BadSample(format!(
                    "sample for `{element_id}` has invalid average power {}",
                    s.avg_power_w
                )));
            }
        }
        samples.sort_by_key(|s| (s.start, s.end));
        for pair in samples.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(EnergyError::BadSample(format!(
                    "samples for `{element_id}` overlap around {}",
                    pair[1].start_utc
                )));
            }
        }
        let first_utc = samples.first().map(|s| s.start_utc.clone()).unwrap_or_default();
        let last_utc = samples.last().map(|s| s.end_utc.clone()).unwrap_or_default();
        Ok(PowerProfile {
            element_id,
            measurement_location,
            samples,
            first_utc,
            last_utc,
        })
    }
}

/// Parse an RFC 3339 timestamp to epoch seconds.
pub fn parse_timestamp(s: &str) -> Result<i64, EnergyError> {
    OffsetDateTime::parse(s, &Rfc3339)
        .map(|t| t.unix_timestamp())
        .map_err(|_| EnergyError::BadTimestamp(s.to_string()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CsvRow {
    element_id: String,
    start_utc: String,
    end_utc: String,
    avg_power_w: f64,
}

/// Load profiles from CSV (`element_id,start_utc,end_utc,avg_power_w`, one
/// sample per row, any row order). The measured element doubles as the
/// measurement location. Returns one profile per element, sorted by id.
pub fn load_profiles_csv(reader: impl io::Read) -> Result<Vec<PowerProfile>, EnergyError> {
    let mut csv_reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut by_element: BTreeMap<String, Vec<PowerSample>> = BTreeMap::new();
    for row in csv_reader.deserialize::<CsvRow>() {
        let row = row.map_err(|e| EnergyError::ProfileCsv(e.to_string()))?;
        let start = parse_timestamp(&row.start_utc)?;
        let end = parse_timestamp(&row.end_utc)?;
        by_element.entry(row.element_id).or_default().push(PowerSample {
            start_utc: row.start_utc,
            end_utc: row.end_utc,
            avg_power_w: row.avg_power_w,
            start,
            end,
        });
    }
    by_element
        .into_iter()
        .map(|(element_id, samples)| {
            let location = element_id.clone();
            PowerProfile::new(element_id, location, samples)
        })
        .collect()
}

/// Piecewise-constant integral of a profile over [from, to), in watt-hours.
/// A zero-length interval yields 0; gaps between samples contribute 0.
pub fn integrate_energy(profile: &PowerProfile, from: i64, to: i64) -> Result<f64, EnergyError> {
    if to < from {
        return Err(EnergyError::BadInterval);
    }
    let mut wh = 0.0;
    for sample in &profile.samples {
        let overlap = sample.end.min(to) - sample.start.max(from);
        if overlap > 0 {
            wh += sample.avg_power_w * overlap as f64 / 3600.0;
        }
    }
    Ok(wh)
}

/// How to divide a straddling element's energy between its two sides.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitPolicy {
    /// Fractions keyed by the functional-group tokens the subsumed bound
    /// separates. Must cover both groups and sum to 1.
    Declared(BTreeMap<String, f64>),
    /// Divide equally between the two sides, with a warning.
    Equal,
    /// Refuse to divide: any straddler is an error.
    Deny,
}

/// Fractions per functional-group side of a subsumed reference point inside
/// `element`. Declared fractions are validated; the equal policy divides
/// uniformly between the sides.
pub fn split_subsumed(
    element: &NetworkElement,
    rp: &ReferencePoint,
    policy: &SplitPolicy,
) -> Result<BTreeMap<String, f64>, EnergyError> {
    let up = rp.upstream_element.clone();
    let down = rp.downstream_element.clone();
    match policy {
        SplitPolicy::Deny => Err(EnergyError::SplitDenied(element.id.clone(), rp.id.clone())),
        SplitPolicy::Equal => {
            let mut fractions = BTreeMap::new();
            if up == down {
                fractions.insert(up, 1.0);
            } else {
                fractions.insert(up, 0.5);
                fractions.insert(down, 0.5);
            }
            Ok(fractions)
        }
        SplitPolicy::Declared(declared) => {
            let up_fraction = *declared.get(&up).ok_or_else(|| {
                EnergyError::FractionsInvalid(format!(
                    "no fraction declared for group `{up}` of {}",
                    rp.id
                ))
            })?;
            let down_fraction = *declared.get(&down).ok_or_else(|| {
                EnergyError::FractionsInvalid(format!(
                    "no fraction declared for group `{down}` of {}",
                    rp.id
                ))
            })?;
            if up_fraction < 0.0 || down_fraction < 0.0 {
                return Err(EnergyError::FractionsInvalid(
                    "fractions must be non-negative".to_string(),
                ));
            }
            let sum = if up == down { up_fraction } else { up_fraction + down_fraction };
            if (sum - 1.0).abs() > 1e-9 {
                return Err(EnergyError::FractionsInvalid(format!(
                    "fractions for {} sum to {sum}, not 1",
                    rp.id
                )));
            }
            let mut fractions = BTreeMap::new();
            fractions.insert(up, up_fraction);
            fractions.insert(down, down_fraction);
            Ok(fractions)
        }
    }
}

/// The request interval, echoed into the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub from_utc: String,
    pub to_utc: String,
}

/// One profile's provenance, echoed verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementProvenance {
    pub element_id: String,
    pub location: String,
    pub first_utc: String,
    pub last_utc: String,
}

/// Provenance echoed from the model and the measurement set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportMetadata {
    pub model_name: String,
    pub model_author: String,
    pub model_date: String,
    /// Earliest sample start / latest sample end over all profiles; empty
    /// when nothing was measured.
    pub measurement_start_utc: String,
    pub measurement_end_utc: String,
    pub measurements: Vec<MeasurementProvenance>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub interval: Interval,
    pub per_segment_wh: BTreeMap<String, f64>,
    pub per_operator_wh: BTreeMap<String, f64>,
    pub total_wh: f64,
    /// Energy of powered elements no segment captured; excluded from both
    /// breakdowns and reported separately.
    pub uncaptured_wh: f64,
    pub hidden_consumer_notes: Vec<String>,
    /// Powered elements with no measured profile, billed at rated draw.
    pub rated_fallback_elements: Vec<String>,
    pub warnings: Vec<String>,
    pub metadata: ReportMetadata,
}

/// Attribute every powered element's energy over [from, to) to the segment
/// and operator owning it under `coverage`.
pub fn attribute_energy(
    model: &Model,
    coverage: &CoverageResult,
    profiles: &[PowerProfile],
    from_utc: &str,
    to_utc: &str,
    policy: &SplitPolicy,
) -> Result<EnergyReport, EnergyError> {
    let from = parse_timestamp(from_utc)?;
    let to = parse_timestamp(to_utc)?;
    if to < from {
        return Err(EnergyError::BadInterval);
    }
    let hours = (to - from) as f64 / 3600.0;

    let mut warnings: Vec<String> = coverage.warnings.clone();
    let mut by_element: BTreeMap<&str, &PowerProfile> = BTreeMap::new();
    for profile in profiles {
        if by_element.insert(&profile.element_id, profile).is_some() {
            return Err(EnergyError::DuplicateProfile(profile.element_id.clone()));
        }
        match model.element(&profile.element_id) {
            None => return Err(EnergyError::UnknownElement(profile.element_id.clone())),
            Some(e) if !e.powered => warnings.push(format!(
                "profile for unpowered element {} ignored",
                profile.element_id
            )),
            Some(_) => {}
        }
    }

    let mut per_segment_wh: BTreeMap<String, f64> =
        model.segments().map(|s| (s.id.clone(), 0.0)).collect();
    let mut per_operator_wh: BTreeMap<String, f64> = BTreeMap::new();
    let mut total_wh = 0.0;
    let mut uncaptured_wh = 0.0;
    let mut rated_fallback_elements: Vec<String> = Vec::new();

    for element in model.elements().filter(|e| e.powered) {
        let wh = match by_element.get(element.id.as_str()) {
            Some(profile) => integrate_energy(profile, from, to)?,
            None => {
                rated_fallback_elements.push(element.id.clone());
                element.power_draw_w * hours
            }
        };
        total_wh += wh;

        if let Some(segment_id) = coverage.assignment.get(&element.id) {
            *per_segment_wh.entry(segment_id.clone()).or_insert(0.0) += wh;
            *per_operator_wh.entry(element.operator_id.clone()).or_insert(0.0) += wh;
        } else if let Some(split) = coverage.straddlers.get(&element.id) {
            let rp = model
                .reference_point(&split.rp_id)
                .expect("straddler bounds come from the model");
            let fractions = split_subsumed(element, rp, policy)?;
            if matches!(policy, SplitPolicy::Equal) {
                warnings.push(format!(
                    "no declared split for straddler {}; dividing its energy equally across {}",
                    element.id, split.rp_id
                ));
            }
            let up_wh = wh * fractions[&rp.upstream_element];
            let down_wh = wh - up_wh;
            *per_segment_wh.entry(split.upstream_segment.clone()).or_insert(0.0) += up_wh;
            *per_segment_wh.entry(split.downstream_segment.clone()).or_insert(0.0) += down_wh;
            let up_operator = model
                .segment(&split.upstream_segment)
                .expect("capture only names model segments")
                .operator_id
                .clone();
            let down_operator = model
                .segment(&split.downstream_segment)
                .expect("capture only names model segments")
                .operator_id
                .clone();
            *per_operator_wh.entry(up_operator).or_insert(0.0) += up_wh;
            *per_operator_wh.entry(down_operator).or_insert(0.0) += down_wh;
        } else {
            uncaptured_wh += wh;
        }
    }

    // Powered elements a path layer cannot see: their energy rides silently
    // under that layer's paths.
    let mut hidden_consumer_notes: Vec<String> = model
        .elements()
        .filter(|e| e.powered && !e.transparent_at_layers.is_empty())
        .map(|e| {
            let owner = coverage.segments_of(&e.id).join(" and ");
            let owner = if owner.is_empty() { "no segment (uncaptured)".to_string() } else { owner };
            format!(
                "{} is powered but transparent at layer(s) {}; its energy is carried by {}",
                e.id,
                e.transparent_at_layers.join(", "),
                owner
            )
        })
        .collect();
    hidden_consumer_notes.sort();

    rated_fallback_elements.sort();
    warnings.sort();
    warnings.dedup();

    let measurements: Vec<MeasurementProvenance> = by_element
        .values()
        .map(|p| MeasurementProvenance {
            element_id: p.element_id.clone(),
            location: p.measurement_location.clone(),
            first_utc: p.first_utc.clone(),
            last_utc: p.last_utc.clone(),
        })
        .collect();
    let measurement_start_utc = by_element
        .values()
        .filter(|p| !p.samples.is_empty())
        .min_by_key(|p| p.samples[0].start)
        .map(|p| p.first_utc.clone())
        .unwrap_or_default();
    let measurement_end_utc = by_element
        .values()
        .filter(|p| !p.samples.is_empty())
        .max_by_key(|p| p.samples[p.samples.len() - 1].end)
        .map(|p| p.last_utc.clone())
        .unwrap_or_default();

    Ok(EnergyReport {
        interval: Interval {
            from_utc: from_utc.to_string(),
            to_utc: to_utc.to_string(),
        },
        per_segment_wh,
        per_operator_wh,
        total_wh,
        uncaptured_wh,
        hidden_consumer_notes,
        rated_fallback_elements,
        warnings,
        metadata: ReportMetadata {
            model_name: model.metadata().name.clone(),
            model_author: model.metadata().author.clone(),
            model_date: model.metadata().date.clone(),
            measurement_start_utc,
            measurement_end_utc,
            measurements,
        },
    })
}
