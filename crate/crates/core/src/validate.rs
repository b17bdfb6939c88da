//! Reference-configuration linting.
//!
//! Ten rules (R1–R10) reconcile reference-point placement against the access
//! standards they were lifted from. Every diagnostic carries the rule code,
//! a severity, the subject ids, fixed message text, and the standards
//! citation that anchors the rule. Checks are local to their subjects:
//! adding unrelated records never removes a diagnostic.

use std::fmt;

use serde::Serialize;

use crate::model::{
    Accessibility, FunctionalGroup, Model, ReferencePoint, RpDesignator, RpKind,
};

/// Rule codes, in rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCode {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
}

impl RuleCode {
    pub fn as_str(&self) -> &'static str {
        use RuleCode::*;
        match self {
            R1 => "R1",
            R2 => "R2",
            R3 => "R3",
            R4 => "R4",
            R5 => "R5",
            R6 => "R6",
            R7 => "R7",
            R8 => "R8",
            R9 => "R9",
            R10 => "R10",
        }
    }

    pub fn severity(&self) -> Severity {
        match self {
            RuleCode::R4 | RuleCode::R9 | RuleCode::R10 => Severity::Warning,
            _ => Severity::Error,
        }
    }

    /// The standards citation the rule encodes.
    pub fn anchor(&self) -> &'static str {
        use RuleCode::*;
        match self {
            R1 => "ITU-T I.411; MEF 4",
            R2 => "ITU-T I.411; BBF TR-145",
            R3 => "BBF TR-043; BBF TR-101 Issue 2",
            R4 => "ITU-T G.984.1; ITU-T G.987.1",
            R5 => "BBF TR-101 Issue 2 Fig. 3; BBF TR-156",
            R6 => "BBF TR-145",
            R7 => "ITU-T G.984.1",
            R8 => "ITU-T Y.140",
            R9 => "ITU-T Y.120 §8.1",
            R10 => "ITU-T I.411",
        }
    }

    pub fn message(&self) -> &'static str {
        use RuleCode::*;
        match self {
            R1 => "S must sit where terminal equipment meets the customer network (the TE is downstream of S)",
            R2 => "T must separate the NT1 functional group from the NT2/RG side",
            R3 => "U must sit on the transmission-line side of the network-terminating function",
            R4 => "in a PON model, R-S should coincide with the PAI (same endpoint pair)",
            R5 => "a subsumed reference point must name two functional groups carried by its subsuming element",
            R6 => "U1 and T must not occupy the same endpoint pair (managed-service vs plain-transport demarcation conflict)",
            R7 => "A-ephemeral is unnecessary when the adaptation function is integrated in the ONU",
            R8 => "segments of different operators must interconnect at an RPI-N or IrDI bound",
            R9 => "designator UNI-legacy is ambiguous; prefer an S/T/U placement",
            R10 => "a T between the residential gateway and other CPE should be an S",
        }
    }
}

impl Serialize for RuleCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl Serialize for Severity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One lint finding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub code: RuleCode,
    pub severity: Severity,
    pub subjects: Vec<String>,
    pub message: String,
    pub anchor: String,
}

impl Diagnostic {
    fn new(code: RuleCode, subjects: Vec<String>) -> Self {
        Diagnostic {
            code,
            severity: code.severity(),
            subjects,
            message: code.message().to_string(),
            anchor: code.anchor().to_string(),
        }
    }
}

impl fmt::Display for Diagnostic {
    /// Stable render: `CODE severity subject-ids — message (anchor)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} — {} ({})",
            self.code.as_str(),
            self.severity.as_str(),
            self.subjects.join(","),
            self.message,
            self.anchor
        )
    }
}

const NT_MARKERS: [FunctionalGroup; 3] =
    [FunctionalGroup::Nt1, FunctionalGroup::Onu, FunctionalGroup::Cm];
const CUSTOMER_MARKERS: [FunctionalGroup; 4] = [
    FunctionalGroup::Rg,
    FunctionalGroup::Te,
    FunctionalGroup::Nt2,
    FunctionalGroup::Af,
];

/// Resolve one side of an RP to the functional groups it stands for: the
/// element's groups for external points, the named group for subsumed ones.
fn side_groups(model: &Model, rp: &ReferencePoint, endpoint: &str) -> Vec<FunctionalGroup> {
    if rp.is_subsumed() {
        FunctionalGroup::from_token(endpoint).into_iter().collect()
    } else {
        model
            .element(endpoint)
            .map(|e| e.functional_groups.clone())
            .unwrap_or_default()
    }
}

fn is_pon_model(model: &Model) -> bool {
    model
        .elements()
        .any(|e| e.has_group(FunctionalGroup::Onu) || e.has_group(FunctionalGroup::Olt))
}

/// A T placed between the residential gateway and other CPE: R10's pattern.
/// Takes precedence over R2 so the two rules stay disjoint.
fn matches_r10(model: &Model, rp: &ReferencePoint) -> bool {
    let up = side_groups(model, rp, &rp.upstream_element);
    let down = side_groups(model, rp, &rp.downstream_element);
    up.contains(&FunctionalGroup::Rg) && down.contains(&FunctionalGroup::Te)
}

/// Run all reference-configuration rules. Diagnostics are sorted by
/// (rule code, first subject id).
pub fn validate_reference_configuration(model: &Model) -> Vec<Diagnostic> {
    let mut out: Vec<Diagnostic> = Vec::new();

    for rp in model.reference_points() {
        match &rp.designator {
            RpDesignator::S => {
                let down = side_groups(model, rp, &rp.downstream_element);
                if !down.contains(&FunctionalGroup::Te) {
                    out.push(Diagnostic::new(RuleCode::R1, vec![rp.id.clone()]));
                }
            }
            RpDesignator::T => {
                if matches_r10(model, rp) {
                    out.push(Diagnostic::new(RuleCode::R10, vec![rp.id.clone()]));
                } else {
                    let up = side_groups(model, rp, &rp.upstream_element);
                    let down = side_groups(model, rp, &rp.downstream_element);
                    let ok = up.contains(&FunctionalGroup::Nt1)
                        && down.iter().any(|g| {
                            matches!(
                                g,
                                FunctionalGroup::Nt2 | FunctionalGroup::Rg | FunctionalGroup::Af
                            )
                        });
                    if !ok {
                        out.push(Diagnostic::new(RuleCode::R2, vec![rp.id.clone()]));
                    }
                }
            }
            RpDesignator::U => {
                let up = side_groups(model, rp, &rp.upstream_element);
                let down = side_groups(model, rp, &rp.downstream_element);
                let ok = if rp.is_subsumed() {
                    // Inside one device the line-terminating half sits on one
                    // side of U and the customer half on the other.
                    let nt_up = up.iter().any(|g| NT_MARKERS.contains(g));
                    let nt_down = down.iter().any(|g| NT_MARKERS.contains(g));
                    let cust_up = up.iter().any(|g| CUSTOMER_MARKERS.contains(g));
                    let cust_down = down.iter().any(|g| CUSTOMER_MARKERS.contains(g));
                    (nt_up && cust_down) || (nt_down && cust_up)
                } else {
                    // The line (distribution plant) is upstream of U, the NT
                    // device immediately downstream.
                    down.iter().any(|g| NT_MARKERS.contains(g))
                        && !up.iter().any(|g| CUSTOMER_MARKERS.contains(g))
                };
                if !ok {
                    out.push(Diagnostic::new(RuleCode::R3, vec![rp.id.clone()]));
                }
            }
            RpDesignator::UniLegacy => {
                out.push(Diagnostic::new(RuleCode::R9, vec![rp.id.clone()]));
            }
            _ => {}
        }
    }

    // R4: in PON models every R-S must have a coinciding PAI.
    if is_pon_model(model) {
        for rp in model.reference_points() {
            if rp.designator != RpDesignator::RS {
                continue;
            }
            let coincides = model.reference_points().any(|other| {
                other.designator == RpDesignator::Pai
                    && other.endpoint_pair() == rp.endpoint_pair()
                    && other.subsuming_element == rp.subsuming_element
            });
            if !coincides {
                out.push(Diagnostic::new(RuleCode::R4, vec![rp.id.clone()]));
            }
        }
    }

    // R5: subsumed points must name groups their subsuming element carries.
    for rp in model.reference_points() {
        if !rp.is_subsumed() {
            continue;
        }
        let Some(sub_id) = &rp.subsuming_element else { continue };
        let Some(sub) = model.element(sub_id) else { continue };
        let carried = |token: &str| {
            FunctionalGroup::from_token(token).is_some_and(|g| sub.has_group(g))
        };
        if !carried(&rp.upstream_element) || !carried(&rp.downstream_element) {
            out.push(Diagnostic::new(
                RuleCode::R5,
                vec![rp.id.clone(), sub_id.clone()],
            ));
        }
    }

    // R6: U1 and T at the same endpoint pair.
    for u1 in model.reference_points() {
        if u1.designator != RpDesignator::U1 {
            continue;
        }
        for t in model.reference_points() {
            if t.designator == RpDesignator::T
                && t.endpoint_pair() == u1.endpoint_pair()
                && t.subsuming_element == u1.subsuming_element
            {
                let mut subjects = vec![t.id.clone(), u1.id.clone()];
                subjects.sort();
                out.push(Diagnostic::new(RuleCode::R6, subjects));
            }
        }
    }

    // R7: A-ephemeral next to an ONU that already integrates the AF.
    for rp in model.reference_points() {
        if rp.designator != RpDesignator::AEphemeral || rp.is_subsumed() {
            continue;
        }
        for ep in [&rp.upstream_element, &rp.downstream_element] {
            if let Some(e) = model.element(ep) {
                if e.has_group(FunctionalGroup::Onu) && e.has_group(FunctionalGroup::Af) {
                    out.push(Diagnostic::new(
                        RuleCode::R7,
                        vec![rp.id.clone(), e.id.clone()],
                    ));
                }
            }
        }
    }

    // R8: different operators must meet at an RPI-N or IrDI bound.
    let segments: Vec<_> = model.segments().collect();
    for (i, a) in segments.iter().enumerate() {
        for b in segments.iter().skip(i + 1) {
            if a.operator_id == b.operator_id {
                continue;
            }
            let shared: Vec<&String> =
                a.bounding_rp_ids.intersection(&b.bounding_rp_ids).collect();
            if shared.is_empty() {
                continue; // not adjacent
            }
            let ok = shared.iter().any(|rp_id| {
                model
                    .reference_point(rp_id)
                    .is_some_and(|rp| matches!(rp.kind, RpKind::RpiN | RpKind::IrDI))
            });
            if !ok {
                let mut subjects = vec![a.id.clone(), b.id.clone()];
                subjects.sort();
                out.push(Diagnostic::new(RuleCode::R8, subjects));
            }
        }
    }

    out.sort_by(|x, y| {
        let kx = (x.code, x.subjects.first().cloned().unwrap_or_default());
        let ky = (y.code, y.subjects.first().cloned().unwrap_or_default());
        kx.cmp(&ky)
    });
    out.dedup();
    out
}

/// One row of the subsumption report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsumptionEntry {
    pub rp_id: String,
    pub subsuming_element_id: String,
    /// Always false: a subsumed point is by definition not externally
    /// reachable.
    pub externally_accessible: bool,
}

/// List every subsumed reference point with its subsuming element, sorted by
/// reference-point id.
pub fn subsumption_report(model: &Model) -> Vec<SubsumptionEntry> {
    model
        .reference_points()
        .filter(|rp| rp.accessibility == Accessibility::Subsumed)
        .map(|rp| SubsumptionEntry {
            rp_id: rp.id.clone(),
            subsuming_element_id: rp.subsuming_element.clone().unwrap_or_default(),
            externally_accessible: false,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, TemplateId, TemplateParams};
    use crate::model::{build_model, ModelParts, NetworkElement};

    fn template(id: TemplateId, integrated: bool, mutate: impl FnOnce(&mut ModelParts)) -> Model {
        let params = TemplateParams {
            integrated_cpe: integrated,
            ..TemplateParams::default()
        };
        let mut parts = instantiate(id, &params);
        mutate(&mut parts);
        build_model(parts).expect("mutated template must still build")
    }

    fn codes(model: &Model) -> Vec<&'static str> {
        validate_reference_configuration(model)
            .iter()
            .map(|d| d.code.as_str())
            .collect()
    }

    fn rp_mut<'a>(parts: &'a mut ModelParts, id: &str) -> &'a mut ReferencePoint {
        parts
            .reference_points
            .iter_mut()
            .find(|rp| rp.id == id)
            .unwrap()
    }

    fn el_mut<'a>(parts: &'a mut ModelParts, id: &str) -> &'a mut NetworkElement {
        parts.elements.iter_mut().find(|e| e.id == id).unwrap()
    }

    #[test]
    fn r1_fires_when_te_is_not_downstream_of_s() {
        let m = template(TemplateId::Gpon, false, |p| {
            let rp = rp_mut(p, "rp-s");
            std::mem::swap(&mut rp.upstream_element, &mut rp.downstream_element);
        });
        assert_eq!(codes(&m), vec!["R1"]);
    }

    #[test]
    fn r2_fires_when_t_does_not_separate_nt1_from_the_rg_side() {
        let m = template(TemplateId::Gpon, false, |p| {
            let rp = rp_mut(p, "rp-t");
            std::mem::swap(&mut rp.upstream_element, &mut rp.downstream_element);
        });
        assert_eq!(codes(&m), vec!["R2"]);
    }

    #[test]
    fn r3_fires_when_u_is_on_the_customer_side_of_the_nt() {
        let m = template(TemplateId::Gpon, false, |p| {
            let rp = rp_mut(p, "rp-u");
            std::mem::swap(&mut rp.upstream_element, &mut rp.downstream_element);
        });
        assert_eq!(codes(&m), vec!["R3"]);
    }

    #[test]
    fn r4_fires_for_r_s_without_a_coinciding_pai_in_a_pon_model() {
        let m = template(TemplateId::Gpon, false, |p| {
            p.reference_points.retain(|rp| rp.id != "rp-pai");
        });
        assert_eq!(codes(&m), vec!["R4"]);
        let d = &validate_reference_configuration(&m)[0];
        assert_eq!(d.severity, Severity::Warning);
    }

    #[test]
    fn r4_is_silent_when_no_pon_element_exists() {
        // Same R-S-without-PAI shape, but in a DOCSIS plant (no ONU/OLT).
        let m = template(TemplateId::HfcDocsis, false, |p| {
            let mut rs = rp_mut(p, "rp-u").clone();
            rs.id = "rp-rs".to_string();
            rs.designator = RpDesignator::RS;
            p.reference_points.push(rs);
        });
        assert_eq!(codes(&m), Vec::<&str>::new());
    }

    #[test]
    fn r5_fires_when_the_subsuming_element_lacks_a_named_group() {
        let m = template(TemplateId::Gpon, true, |p| {
            el_mut(p, "demo-onurg")
                .functional_groups
                .retain(|g| *g != FunctionalGroup::Rg);
        });
        assert_eq!(codes(&m), vec!["R5"]);
        let d = &validate_reference_configuration(&m)[0];
        assert_eq!(d.subjects, vec!["rp-u".to_string(), "demo-onurg".to_string()]);
    }

    #[test]
    fn r6_fires_when_u1_and_t_share_an_endpoint_pair() {
        let m = template(TemplateId::Xdsl, true, |p| {
            let mut u1 = rp_mut(p, "rp-t").clone();
            u1.id = "rp-u1".to_string();
            u1.designator = RpDesignator::U1;
            p.reference_points.push(u1);
        });
        assert_eq!(codes(&m), vec!["R6"]);
    }

    #[test]
    fn r7_fires_when_an_ephemeral_a_point_touches_an_onu_with_integrated_af() {
        let m = template(TemplateId::Gpon, false, |p| {
            el_mut(p, "demo-onu").functional_groups.push(FunctionalGroup::Af);
        });
        assert_eq!(codes(&m), vec!["R7"]);
    }

    #[test]
    fn r8_fires_when_operators_meet_without_an_rpin_or_irdi_bound() {
        let m = template(TemplateId::Gpon, false, |p| {
            rp_mut(p, "rp-a").kind = RpKind::RpiS;
        });
        assert_eq!(codes(&m), vec!["R8"]);
        let d = &validate_reference_configuration(&m)[0];
        assert_eq!(d.subjects, vec!["seg-access".to_string(), "seg-customer".to_string()]);
    }

    #[test]
    fn r9_fires_for_a_uni_legacy_designator() {
        let m = template(TemplateId::Gpon, false, |p| {
            p.reference_points.push(ReferencePoint {
                id: "rp-x".to_string(),
                designator: RpDesignator::UniLegacy,
                kind: RpKind::RpiS,
                layer_id: "media".to_string(),
                upstream_element: "demo-onu".to_string(),
                downstream_element: "demo-rg".to_string(),
                accessibility: Accessibility::External,
                subsuming_element: None,
            });
        });
        assert_eq!(codes(&m), vec!["R9"]);
        let d = &validate_reference_configuration(&m)[0];
        assert_eq!(
            d.to_string(),
            "R9 warning rp-x — designator UNI-legacy is ambiguous; prefer an S/T/U placement (ITU-T Y.120 §8.1)"
        );
    }

    #[test]
    fn r10_fires_instead_of_r2_for_a_t_between_rg_and_te() {
        let m = template(TemplateId::Gpon, false, |p| {
            let rp = rp_mut(p, "rp-t");
            rp.upstream_element = "demo-rg".to_string();
            rp.downstream_element = "demo-te".to_string();
        });
        assert_eq!(codes(&m), vec!["R10"]);
    }

    #[test]
    fn diagnostics_sort_by_code_then_first_subject() {
        let m = template(TemplateId::Gpon, false, |p| {
            let s = rp_mut(p, "rp-s");
            std::mem::swap(&mut s.upstream_element, &mut s.downstream_element);
            let t = rp_mut(p, "rp-t");
            std::mem::swap(&mut t.upstream_element, &mut t.downstream_element);
        });
        assert_eq!(codes(&m), vec!["R1", "R2"]);
    }

    #[test]
    fn subsumption_report_lists_absorbed_points() {
        let merged = template(TemplateId::Gpon, true, |_| {});
        let report = subsumption_report(&merged);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rp_id, "rp-u");
        assert_eq!(report[0].subsuming_element_id, "demo-onurg");
        assert!(!report[0].externally_accessible);

        let split = template(TemplateId::Gpon, false, |_| {});
        assert!(subsumption_report(&split).is_empty());
    }
}
