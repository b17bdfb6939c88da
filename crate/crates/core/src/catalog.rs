//! Built-in distribution-network templates.
//!
//! Each template instantiates a complete, self-contained document: layers,
//! sites, elements, links, reference points, and segments, ready for
//! validation, recomposition, and energy attribution. Element power draws
//! are 0 W placeholders — attach measured profiles or edit the rated draws.
//! Template notes record the standards the layout is anchored to and any
//! modeling assumptions made.

use crate::model::{
    Accessibility, FunctionalGroup, LayerKind, LayerNetwork, Link, Metadata, ModelParts,
    NetworkElement, ReferencePoint, RpDesignator, RpKind, Segment, SegmentName, Site, SpaceClass,
};

/// Operator id used for customer-owned equipment in every template.
pub const SUBSCRIBER_OPERATOR: &str = "subscriber";

/// The built-in templates, in catalog (alphabetical) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TemplateId {
    FivegRuDuCsr,
    Fttb,
    Fttn,
    Gfast,
    Gpon,
    HfcDocsis,
    IpOverDwdm,
    PtpEthernet,
    RemotePhy,
    Rfog,
    Xdsl,
    Xgspon,
}

impl TemplateId {
    pub const ALL: [TemplateId; 12] = [
        TemplateId::FivegRuDuCsr,
        TemplateId::Fttb,
        TemplateId::Fttn,
        TemplateId::Gfast,
        TemplateId::Gpon,
        TemplateId::HfcDocsis,
        TemplateId::IpOverDwdm,
        TemplateId::PtpEthernet,
        TemplateId::RemotePhy,
        TemplateId::Rfog,
        TemplateId::Xdsl,
        TemplateId::Xgspon,
    ];

    pub fn as_str(&self) -> &'static str {
        use TemplateId::*;
        match self {
            FivegRuDuCsr => "FIVEG-RU-DU-CSR",
            Fttb => "FTTB",
            Fttn => "FTTN",
            Gfast => "GFAST",
            Gpon => "GPON",
            HfcDocsis => "HFC-DOCSIS",
            IpOverDwdm => "IP-OVER-DWDM",
            PtpEthernet => "PTP-ETHERNET",
            RemotePhy => "REMOTE-PHY",
            Rfog => "RFOG",
            Xdsl => "XDSL",
            Xgspon => "XGSPON",
        }
    }

    pub fn from_token(token: &str) -> Option<TemplateId> {
        Self::ALL.iter().copied().find(|t| t.as_str() == token)
    }

    pub fn description(&self) -> &'static str {
        use TemplateId::*;
        match self {
            FivegRuDuCsr => {
                "5G radio chain: RU at the cell site, DU at a hub shelter, cell-site router toward aggregation"
            }
            Fttb => {
                "Fibre to the building: fibre-fed MSAN in the building communications room, copper to apartments"
            }
            Fttn => "Fibre to the node: fibre-fed MSAN in a street cabinet, VDSL copper loop to the premises",
            Gfast => "G.fast distribution point: fibre-fed DPU at a pedestal, high-speed copper drop",
            Gpon => "GPON FTTH: OLT, passive optical splitter, ONU at the premises",
            HfcDocsis => {
                "Hybrid fibre-coax: CMTS at the headend, optical node, five-amplifier cascade, cable modem"
            }
            IpOverDwdm => "Two IP PoPs joined over a DWDM line system with one in-line amplifier",
            PtpEthernet => "Point-to-point Ethernet FTTH with an Ethernet path layer over dedicated fibre",
            RemotePhy => "Distributed HFC: CCAP core at the headend, Remote-PHY node at a street site",
            Rfog => "RF over glass: DOCSIS headend and passive optics with an R-ONU at the premises",
            Xdsl => "ADSL/VDSL from the central office over a passive copper cross-connect",
            Xgspon => "XGS-PON FTTH: symmetric-10G OLT, passive optical splitter, ONU at the premises",
        }
    }
}

/// Knobs shared by every template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateParams {
    /// Operator id stamped on network-owned records.
    pub operator: String,
    /// Prefix for generated site and element ids.
    pub site_prefix: String,
    /// Collapse the NT and routing-gateway functions into one CPE device
    /// (honored by the FTTx/DSL-family templates; ignored elsewhere).
    pub integrated_cpe: bool,
}

impl Default for TemplateParams {
    fn default() -> Self {
        TemplateParams {
            operator: "op-metro".to_string(),
            site_prefix: "demo".to_string(),
            integrated_cpe: false,
        }
    }
}

/// `catalog new` was asked for a template id that does not exist.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("E-UNKNOWN-TEMPLATE: no catalog template named `{0}`")]
pub struct UnknownTemplate(pub String);

/// All templates with their one-line descriptions, in alphabetical order.
pub fn list_templates() -> Vec<(TemplateId, &'static str)> {
    TemplateId::ALL.iter().map(|t| (*t, t.description())).collect()
}

/// Instantiate a template by its catalog token.
pub fn instantiate_template(
    token: &str,
    params: &TemplateParams,
) -> Result<ModelParts, UnknownTemplate> {
    let id = TemplateId::from_token(token).ok_or_else(|| UnknownTemplate(token.to_string()))?;
    Ok(instantiate(id, params))
}

/// Instantiate a template.
pub fn instantiate(id: TemplateId, params: &TemplateParams) -> ModelParts {
    match id {
        TemplateId::FivegRuDuCsr => fiveg(params),
        TemplateId::Fttb => fttx(params, FttxFlavor::Building),
        TemplateId::Fttn => fttx(params, FttxFlavor::Node),
        TemplateId::Gfast => gfast(params),
        TemplateId::Gpon => pon_ftth(params, PonFlavor::Gpon),
        TemplateId::HfcDocsis => hfc(params),
        TemplateId::IpOverDwdm => dwdm(params),
        TemplateId::PtpEthernet => ptp_ethernet(params),
        TemplateId::RemotePhy => remote_phy(params),
        TemplateId::Rfog => rfog(params),
        TemplateId::Xdsl => xdsl(params),
        TemplateId::Xgspon => pon_ftth(params, PonFlavor::Xgspon),
    }
}

// ---------------------------------------------------------------------------
// Record builders
// ---------------------------------------------------------------------------

const PLACEHOLDER_DRAWS_NOTE: &str =
    "assumed: power draws are 0 W placeholders; attach measured profiles or set rated draws";

fn meta(name: &str, notes: &[&str]) -> Metadata {
    Metadata {
        name: name.to_string(),
        author: "metromodel catalog".to_string(),
        date: String::new(),
        notes: notes.iter().map(|n| n.to_string()).collect(),
    }
}

fn media_layer(info: &str) -> LayerNetwork {
    LayerNetwork {
        id: "media".to_string(),
        name: "Transmission media".to_string(),
        kind: LayerKind::TransmissionMedia,
        characteristic_info: info.to_string(),
        server_layers: Vec::new(),
    }
}

fn path_layer(id: &str, name: &str, info: &str, servers: &[&str]) -> LayerNetwork {
    LayerNetwork {
        id: id.to_string(),
        name: name.to_string(),
        kind: LayerKind::Path,
        characteristic_info: info.to_string(),
        server_layers: servers.iter().map(|s| s.to_string()).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn site(
    id: String,
    name: &str,
    label: &str,
    class: SpaceClass,
    has_power: bool,
    headroom: f64,
    uplink: bool,
) -> Site {
    Site {
        id,
        name: name.to_string(),
        location_label: label.to_string(),
        space_class: class,
        has_power,
        power_headroom_w: headroom,
        has_ethernet_uplink: uplink,
    }
}

#[allow(clippy::too_many_arguments)]
fn el(
    id: String,
    name: &str,
    site: String,
    operator: &str,
    groups: &[FunctionalGroup],
    powered: bool,
    present: &[&str],
    transparent: &[&str],
) -> NetworkElement {
    NetworkElement {
        id,
        name: name.to_string(),
        site_id: site,
        operator_id: operator.to_string(),
        functional_groups: groups.to_vec(),
        powered,
        power_draw_w: 0.0,
        present_at_layers: present.iter().map(|l| l.to_string()).collect(),
        transparent_at_layers: transparent.iter().map(|l| l.to_string()).collect(),
    }
}

fn media_link(id: &str, a: String, b: String) -> Link {
    Link {
        id: id.to_string(),
        layer_id: "media".to_string(),
        endpoint_a: a,
        endpoint_b: b,
        server_trail: Vec::new(),
    }
}

fn path_link(id: &str, layer: &str, a: String, b: String, trail: Vec<String>) -> Link {
    Link {
        id: id.to_string(),
        layer_id: layer.to_string(),
        endpoint_a: a,
        endpoint_b: b,
        server_trail: trail,
    }
}

fn rp(
    id: &str,
    designator: RpDesignator,
    kind: RpKind,
    layer: &str,
    up: String,
    down: String,
) -> ReferencePoint {
    ReferencePoint {
        id: id.to_string(),
        designator,
        kind,
        layer_id: layer.to_string(),
        upstream_element: up,
        downstream_element: down,
        accessibility: Accessibility::External,
        subsuming_element: None,
    }
}

/// A reference point absorbed into one device: endpoints name the functional
/// groups it separates. Kind IrDI — the point is still the subscriber/operator
/// domain boundary even though no connector is reachable.
fn rp_sub(
    id: &str,
    designator: RpDesignator,
    layer: &str,
    up_group: &str,
    down_group: &str,
    subsuming: String,
) -> ReferencePoint {
    ReferencePoint {
        id: id.to_string(),
        designator,
        kind: RpKind::IrDI,
        layer_id: layer.to_string(),
        upstream_element: up_group.to_string(),
        downstream_element: down_group.to_string(),
        accessibility: Accessibility::Subsumed,
        subsuming_element: Some(subsuming),
    }
}

fn seg(id: &str, name: SegmentName, operator: &str, bounds: &[&str]) -> Segment {
    Segment {
        id: id.to_string(),
        name,
        operator_id: operator.to_string(),
        bounding_rp_ids: bounds.iter().map(|b| b.to_string()).collect(),
    }
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

enum PonFlavor {
    Gpon,
    Xgspon,
}

/// GPON / XGS-PON FTTH. Non-integrated CPE keeps a standalone ONU and a
/// routing gateway with the adaptation function, separated by an ephemeral
/// A point; integrated CPE merges them into one device whose U point is
/// subsumed and serves as the access/customer segment boundary.
fn pon_ftth(params: &TemplateParams, flavor: PonFlavor) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();
    let (title, info, anchors) = match flavor {
        PonFlavor::Gpon => (
            "GPON access network",
            "GPON TDM optical distribution (2.488/1.244 Gbit/s)",
            "anchors: ITU-T G.984.1; BBF TR-156; BBF TR-101 Issue 2",
        ),
        PonFlavor::Xgspon => (
            "XGS-PON access network",
            "XGS-PON TDM optical distribution (9.953/9.953 Gbit/s)",
            "anchors: ITU-T G.9807.1; BBF TR-156; BBF TR-101 Issue 2",
        ),
    };

    let mut parts = ModelParts {
        metadata: meta(
            title,
            &[
                anchors,
                "assumed: splitter cabinet is unpowered street furniture",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer(info)],
        sites: vec![
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
            site(p("cab"), "Splitter cabinet", "kerbside", SpaceClass::Cabinet, false, 0.0, false),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(p("olt"), "Optical line terminal", p("co"), op, &[FunctionalGroup::Olt], true, &["media"], &[]),
            el(p("split"), "Passive optical splitter", p("cab"), op, &[FunctionalGroup::PowerSplitter], false, &["media"], &[]),
        ],
        links: vec![media_link("ln-uplink", p("agg"), p("olt"))],
        reference_points: vec![rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("olt"))],
        segments: vec![seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"])],
    };
    parts.links.push(media_link("ln-feeder", p("olt"), p("split")));

    if params.integrated_cpe {
        parts.elements.extend([
            el(
                p("onurg"),
                "Integrated ONU / routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Onu, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-drop", p("split"), p("onurg")),
            media_link("ln-lan", p("onurg"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-rs", RpDesignator::RS, RpKind::RpiN, "media", p("split"), p("onurg")),
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("split"), p("onurg")),
            rp_sub("rp-u", RpDesignator::U, "media", "ONU", "RG", p("onurg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("onurg"), p("te")),
        ]);
        parts.segments.extend([
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ]);
    } else {
        parts.elements.extend([
            el(
                p("onu"),
                "Optical network unit",
                p("prem"),
                op,
                &[FunctionalGroup::Nt1, FunctionalGroup::Onu],
                true,
                &["media"],
                &[],
            ),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-drop", p("split"), p("onu")),
            media_link("ln-cpe", p("onu"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-rs", RpDesignator::RS, RpKind::RpiN, "media", p("split"), p("onu")),
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("split"), p("onu")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("split"), p("onu")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("onu"), p("rg")),
            rp("rp-a", RpDesignator::AEphemeral, RpKind::RpiN, "media", p("onu"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ]);
        parts.segments.extend([
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-a"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-a"]),
        ]);
    }
    parts
}

/// ADSL/VDSL from the CO over a passive cross-connect frame. The PAI and U
/// points share the frame/NT endpoint pair: nothing powered sits between
/// the physical access interface and the customer demarcation.
fn xdsl(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    let mut parts = ModelParts {
        metadata: meta(
            "xDSL access network",
            &[
                "anchors: BBF TR-025; BBF TR-101 Issue 2; ITU-T G.992/G.993 series",
                "assumed: cross-connect frame is passive",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("twisted-pair copper loop")],
        sites: vec![
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
            site(p("xc"), "Cross-connect cabinet", "kerbside", SpaceClass::Cabinet, false, 0.0, false),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(p("dslam"), "DSLAM", p("co"), op, &[FunctionalGroup::Dslam], true, &["media"], &[]),
            el(p("frame"), "Passive cross-connect frame", p("xc"), op, &[FunctionalGroup::Other], false, &["media"], &[]),
        ],
        links: vec![
            media_link("ln-uplink", p("agg"), p("dslam")),
            media_link("ln-feeder", p("dslam"), p("frame")),
        ],
        reference_points: vec![rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("dslam"))],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ],
    };

    if params.integrated_cpe {
        parts.elements.extend([
            el(
                p("cpe"),
                "Integrated DSL gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Nt1, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-loop", p("frame"), p("cpe")),
            media_link("ln-lan", p("cpe"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("frame"), p("cpe")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("frame"), p("cpe")),
            rp_sub("rp-t", RpDesignator::T, "media", "NT1", "RG", p("cpe")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("cpe"), p("te")),
        ]);
    } else {
        parts.elements.extend([
            el(p("modem"), "DSL modem", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Nt1], true, &["media"], &[]),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-loop", p("frame"), p("modem")),
            media_link("ln-cpe", p("modem"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("frame"), p("modem")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("frame"), p("modem")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("modem"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ]);
    }
    parts
}

/// G.fast from a reverse-powered distribution-point unit at a pedestal.
fn gfast(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    let mut parts = ModelParts {
        metadata: meta(
            "G.fast distribution-point network",
            &[
                "anchors: ITU-T G.9701; BBF TR-301",
                "assumed: DPU is reverse-powered over subscriber drops; the pedestal offers no local supply",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("fibre feeder with G.fast copper drop")],
        sites: vec![
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
            site(p("ped"), "Distribution-point pedestal", "kerbside", SpaceClass::Pedestal, false, 0.0, false),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(p("olt"), "Optical line terminal", p("co"), op, &[FunctionalGroup::Olt], true, &["media"], &[]),
            el(
                p("dpu"),
                "G.fast distribution-point unit",
                p("ped"),
                op,
                &[FunctionalGroup::Dslam, FunctionalGroup::Onu],
                true,
                &["media"],
                &[],
            ),
        ],
        links: vec![
            media_link("ln-uplink", p("agg"), p("olt")),
            media_link("ln-feeder", p("olt"), p("dpu")),
        ],
        reference_points: vec![rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("olt"))],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ],
    };

    if params.integrated_cpe {
        parts.elements.extend([
            el(
                p("cpe"),
                "Integrated G.fast gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Nt1, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-drop", p("dpu"), p("cpe")),
            media_link("ln-lan", p("cpe"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("dpu"), p("cpe")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("dpu"), p("cpe")),
            rp_sub("rp-t", RpDesignator::T, "media", "NT1", "RG", p("cpe")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("cpe"), p("te")),
        ]);
    } else {
        parts.elements.extend([
            el(p("nt"), "G.fast network termination", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Nt1], true, &["media"], &[]),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-drop", p("dpu"), p("nt")),
            media_link("ln-cpe", p("nt"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("dpu"), p("nt")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("dpu"), p("nt")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("nt"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ]);
    }
    parts
}

/// Hybrid fibre-coax with a five-amplifier trunk cascade.
fn hfc(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    let mut parts = ModelParts {
        metadata: meta(
            "HFC DOCSIS network",
            &[
                "anchors: CableLabs DOCSIS MULPI (CM-SP-MULPIv3.1); ITU-T J.112",
                "assumed: five-amplifier trunk cascade grouped on one coax-plant site",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("fibre trunk with amplified coaxial distribution")],
        sites: vec![
            site(p("he"), "Headend", "regional headend", SpaceClass::Headend, true, 10000.0, true),
            site(p("street"), "Optical-node site", "utility pole", SpaceClass::StreetNode, true, 500.0, false),
            site(p("plant"), "Coax distribution plant", "trunk route", SpaceClass::Other, true, 300.0, false),
            site(p("ped"), "Tap pedestal", "kerbside", SpaceClass::Pedestal, false, 0.0, false),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("he"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(p("cmts"), "CMTS", p("he"), op, &[FunctionalGroup::Cmts], true, &["media"], &[]),
            el(p("optical-node"), "Optical node", p("street"), op, &[FunctionalGroup::Other], true, &["media"], &[]),
        ],
        links: vec![
            media_link("ln-uplink", p("agg"), p("cmts")),
            media_link("ln-fibre", p("cmts"), p("optical-node")),
        ],
        reference_points: vec![rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("cmts"))],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ],
    };

    let mut prev = p("optical-node");
    for i in 1..=5 {
        let amp = p(&format!("coax-amp-{i}"));
        parts.elements.push(el(
            amp.clone(),
            &format!("Coaxial trunk amplifier {i}"),
            p("plant"),
            op,
            &[FunctionalGroup::Other],
            true,
            &["media"],
            &[],
        ));
        parts.links.push(media_link(&format!("ln-coax-{i}"), prev, amp.clone()));
        prev = amp;
    }

    parts.elements.extend([
        el(p("tap"), "Passive multitap", p("ped"), op, &[FunctionalGroup::Other], false, &["media"], &[]),
        el(
            p("cm"),
            "Cable modem",
            p("prem"),
            SUBSCRIBER_OPERATOR,
            &[FunctionalGroup::Cm, FunctionalGroup::Nt1],
            true,
            &["media"],
            &[],
        ),
        el(
            p("rg"),
            "Routing gateway",
            p("prem"),
            SUBSCRIBER_OPERATOR,
            &[FunctionalGroup::Af, FunctionalGroup::Rg],
            true,
            &["media"],
            &[],
        ),
        el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
    ]);
    parts.links.extend([
        media_link("ln-coax-6", prev, p("tap")),
        media_link("ln-drop", p("tap"), p("cm")),
        media_link("ln-cpe", p("cm"), p("rg")),
        media_link("ln-lan", p("rg"), p("te")),
    ]);
    parts.reference_points.extend([
        rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("tap"), p("cm")),
        rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("tap"), p("cm")),
        rp("rp-cmci", RpDesignator::Cmci, RpKind::RpiN, "media", p("cm"), p("rg")),
        rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("cm"), p("rg")),
        rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
    ]);
    parts
}

/// RF over glass: DOCSIS headend, passive optics, operator-owned R-ONU.
fn rfog(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    ModelParts {
        metadata: meta(
            "RFoG access network",
            &[
                "anchors: SCTE 174; ITU-T G.984.1",
                "assumed: R-ONU is operator-owned, so the customer segment starts at its T point",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("RF over glass optical distribution")],
        sites: vec![
            site(p("he"), "Headend", "regional headend", SpaceClass::Headend, true, 10000.0, true),
            site(p("cab"), "Splitter cabinet", "kerbside", SpaceClass::Cabinet, false, 0.0, false),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("he"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(p("cmts"), "CMTS", p("he"), op, &[FunctionalGroup::Cmts], true, &["media"], &[]),
            el(p("split"), "Passive optical splitter", p("cab"), op, &[FunctionalGroup::PowerSplitter], false, &["media"], &[]),
            el(
                p("ronu"),
                "RFoG optical network unit",
                p("prem"),
                op,
                &[FunctionalGroup::Nt1, FunctionalGroup::Onu],
                true,
                &["media"],
                &[],
            ),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ],
        links: vec![
            media_link("ln-uplink", p("agg"), p("cmts")),
            media_link("ln-feeder", p("cmts"), p("split")),
            media_link("ln-drop", p("split"), p("ronu")),
            media_link("ln-cpe", p("ronu"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ],
        reference_points: vec![
            rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("cmts")),
            rp("rp-rs", RpDesignator::RS, RpKind::RpiN, "media", p("split"), p("ronu")),
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("split"), p("ronu")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("split"), p("ronu")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("ronu"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-t"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-t"]),
        ],
    }
}

/// Distributed HFC: CCAP core at the headend, Remote-PHY node in the street.
fn remote_phy(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    ModelParts {
        metadata: meta(
            "Remote-PHY network",
            &[
                "anchors: CableLabs R-PHY (CM-SP-R-PHY); DOCSIS MULPI",
                "assumed: street node offers local power and an Ethernet uplink",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("digital fibre with coaxial last mile")],
        sites: vec![
            site(p("he"), "Headend", "regional headend", SpaceClass::Headend, true, 10000.0, true),
            site(p("street"), "Remote-PHY street site", "utility cabinet", SpaceClass::StreetNode, true, 1200.0, true),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("core"), "CCAP core", p("he"), op, &[FunctionalGroup::Cmts], true, &["media"], &[]),
            el(p("rpd"), "Remote-PHY node", p("street"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
            el(
                p("cm"),
                "Cable modem",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Cm, FunctionalGroup::Nt1],
                true,
                &["media"],
                &[],
            ),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ],
        links: vec![
            media_link("ln-fibre", p("core"), p("rpd")),
            media_link("ln-coax", p("rpd"), p("cm")),
            media_link("ln-cpe", p("cm"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ],
        reference_points: vec![
            rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("core"), p("rpd")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("rpd"), p("cm")),
            rp("rp-cmci", RpDesignator::Cmci, RpKind::RpiN, "media", p("cm"), p("rg")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("cm"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ],
        segments: vec![
            seg("seg-core", SegmentName::MetroCore, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ],
    }
}

/// Point-to-point Ethernet FTTH with an explicit Ethernet path layer. The
/// premises media converter terminates fibre but forwards Ethernet frames
/// transparently, so Ethernet-layer paths hide it.
fn ptp_ethernet(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    ModelParts {
        metadata: meta(
            "Point-to-point Ethernet access network",
            &[
                "anchors: IEEE 802.3; BBF TR-101 Issue 2",
                "assumed: media converter terminates fibre but forwards Ethernet frames transparently",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![
            media_layer("dedicated point-to-point fibre"),
            path_layer("eth", "Ethernet", "Ethernet MAC frames", &["media"]),
        ],
        sites: vec![
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("agg"), "Aggregation switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media", "eth"], &[]),
            el(p("sw"), "Access switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media", "eth"], &[]),
            el(p("nt"), "Fibre media converter", p("prem"), op, &[FunctionalGroup::Nt1], true, &["media"], &["eth"]),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media", "eth"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media", "eth"], &[]),
        ],
        links: vec![
            media_link("ln-uplink", p("agg"), p("sw")),
            media_link("ln-drop", p("sw"), p("nt")),
            media_link("ln-cpe", p("nt"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
            path_link("ln-e-acc", "eth", p("agg"), p("sw"), vec![p("agg"), p("sw")]),
            path_link("ln-e-sub", "eth", p("sw"), p("rg"), vec![p("sw"), p("nt"), p("rg")]),
            path_link("ln-e-lan", "eth", p("rg"), p("te"), vec![p("rg"), p("te")]),
        ],
        reference_points: vec![
            rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("agg"), p("sw")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("sw"), p("nt")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("nt"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-t"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-t"]),
        ],
    }
}

/// 5G RAN transport chain with custom fronthaul/midhaul/backhaul points.
fn fiveg(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    ModelParts {
        metadata: meta(
            "5G RU/DU/CSR transport chain",
            &[
                "anchors: 3GPP TS 38.401; O-RAN WG4 fronthaul",
                "assumed: single-sector chain; the cell-site router is co-located with the DU at the hub shelter",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("fronthaul/midhaul/backhaul fibre")],
        sites: vec![
            site(p("cell"), "Cell site", "rooftop mast", SpaceClass::StreetNode, true, 2000.0, false),
            site(p("hub"), "Hub shelter", "aggregation hub", SpaceClass::ServiceRoom, true, 3000.0, true),
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
        ],
        elements: vec![
            el(p("ru"), "Radio unit", p("cell"), op, &[FunctionalGroup::Ru], true, &["media"], &[]),
            el(p("du"), "Distributed unit", p("hub"), op, &[FunctionalGroup::Du], true, &["media"], &[]),
            el(p("csr"), "Cell-site router", p("hub"), op, &[FunctionalGroup::Csr], true, &["media"], &[]),
            el(p("agg"), "Aggregation switch", p("co"), op, &[FunctionalGroup::EthernetSwitch], true, &["media"], &[]),
        ],
        links: vec![
            media_link("ln-fh", p("ru"), p("du")),
            media_link("ln-mh", p("du"), p("csr")),
            media_link("ln-bh", p("csr"), p("agg")),
        ],
        reference_points: vec![
            rp("rp-fh", RpDesignator::Custom("FH".to_string()), RpKind::RpiN, "media", p("du"), p("ru")),
            rp("rp-mh", RpDesignator::Custom("MH".to_string()), RpKind::RpiN, "media", p("csr"), p("du")),
            rp("rp-bh", RpDesignator::Custom("BH".to_string()), RpKind::RpiN, "media", p("agg"), p("csr")),
        ],
        segments: vec![
            seg("seg-fronthaul", SegmentName::Fronthaul, op, &["rp-fh"]),
            seg("seg-midhaul", SegmentName::Midhaul, op, &["rp-fh", "rp-mh"]),
            seg("seg-backhaul", SegmentName::Backhaul, op, &["rp-mh", "rp-bh"]),
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-bh"]),
        ],
    }
}

enum FttxFlavor {
    Node,
    Building,
}

/// FTTN / FTTB: fibre-fed MSAN with a copper loop to the premises.
fn fttx(params: &TemplateParams, flavor: FttxFlavor) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();
    let (title, msan_site, headroom_note) = match flavor {
        FttxFlavor::Node => (
            "FTTN access network",
            site(p("cab"), "Street cabinet", "kerbside", SpaceClass::Cabinet, true, 800.0, true),
            "assumed: cabinet supply headroom is 800 W",
        ),
        FttxFlavor::Building => (
            "FTTB access network",
            site(p("bld"), "Building communications room", "basement riser", SpaceClass::ServiceRoom, true, 1500.0, true),
            "assumed: communications-room supply headroom is 1500 W",
        ),
    };
    let msan_site_id = msan_site.id.clone();

    let mut parts = ModelParts {
        metadata: meta(
            title,
            &[
                "anchors: BBF TR-101 Issue 2; ITU-T G.993.2",
                "assumed: dedicated fibre feeder (no splitter modeled)",
                headroom_note,
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![media_layer("fibre feeder with VDSL copper loop")],
        sites: vec![
            site(p("co"), "Central office", "metro CO", SpaceClass::CentralOffice, true, 5000.0, true),
            msan_site,
            site(p("prem"), "Customer premises", "subscriber home", SpaceClass::CustomerPremises, true, 200.0, false),
        ],
        elements: vec![
            el(p("olt"), "Optical line terminal", p("co"), op, &[FunctionalGroup::Olt], true, &["media"], &[]),
            el(
                p("msan"),
                "Multi-service access node",
                msan_site_id,
                op,
                &[FunctionalGroup::Msan, FunctionalGroup::Onu],
                true,
                &["media"],
                &[],
            ),
        ],
        links: vec![media_link("ln-feeder", p("olt"), p("msan"))],
        reference_points: vec![rp("rp-v", RpDesignator::V, RpKind::RpiS, "media", p("olt"), p("msan"))],
        segments: vec![
            seg("seg-aggregation", SegmentName::Aggregation, op, &["rp-v"]),
            seg("seg-access", SegmentName::Access, op, &["rp-v", "rp-u"]),
            seg("seg-customer", SegmentName::Customer, SUBSCRIBER_OPERATOR, &["rp-u"]),
        ],
    };

    if params.integrated_cpe {
        parts.elements.extend([
            el(
                p("cpe"),
                "Integrated VDSL gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Nt1, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-loop", p("msan"), p("cpe")),
            media_link("ln-lan", p("cpe"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("msan"), p("cpe")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("msan"), p("cpe")),
            rp_sub("rp-t", RpDesignator::T, "media", "NT1", "RG", p("cpe")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("cpe"), p("te")),
        ]);
    } else {
        parts.elements.extend([
            el(p("nt"), "VDSL modem", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Nt1], true, &["media"], &[]),
            el(
                p("rg"),
                "Routing gateway",
                p("prem"),
                SUBSCRIBER_OPERATOR,
                &[FunctionalGroup::Af, FunctionalGroup::Rg],
                true,
                &["media"],
                &[],
            ),
            el(p("te"), "Terminal equipment", p("prem"), SUBSCRIBER_OPERATOR, &[FunctionalGroup::Te], true, &["media"], &[]),
        ]);
        parts.links.extend([
            media_link("ln-loop", p("msan"), p("nt")),
            media_link("ln-cpe", p("nt"), p("rg")),
            media_link("ln-lan", p("rg"), p("te")),
        ]);
        parts.reference_points.extend([
            rp("rp-pai", RpDesignator::Pai, RpKind::RpiN, "media", p("msan"), p("nt")),
            rp("rp-u", RpDesignator::U, RpKind::RpiN, "media", p("msan"), p("nt")),
            rp("rp-t", RpDesignator::T, RpKind::RpiN, "media", p("nt"), p("rg")),
            rp("rp-s", RpDesignator::S, RpKind::RpiN, "media", p("rg"), p("te")),
        ]);
    }
    parts
}

/// Two IP PoPs over a DWDM line system. The mux/demux pair and the in-line
/// amplifier are transparent at the IP layer; only the amplifier draws power,
/// making it the classic hidden consumer of an IP path.
fn dwdm(params: &TemplateParams) -> ModelParts {
    let p = |s: &str| format!("{}-{}", params.site_prefix, s);
    let op = params.operator.as_str();

    ModelParts {
        metadata: meta(
            "IP over DWDM core link",
            &[
                "anchors: ITU-T G.872; ITU-T G.698.2",
                "assumed: single in-line amplifier; the OM-OD muxes are passive",
                PLACEHOLDER_DRAWS_NOTE,
            ],
        ),
        layers: vec![
            media_layer("DWDM optical spectrum"),
            path_layer("ip", "IP", "IP packets", &["media"]),
        ],
        sites: vec![
            site(p("pop-a"), "PoP A", "metro PoP", SpaceClass::CentralOffice, true, 8000.0, true),
            site(p("hut"), "Amplifier hut", "mid-span", SpaceClass::Vault, true, 400.0, false),
            site(p("pop-b"), "PoP B", "metro PoP", SpaceClass::CentralOffice, true, 8000.0, true),
        ],
        elements: vec![
            el(p("pe1"), "Provider-edge router A", p("pop-a"), op, &[FunctionalGroup::PeRouter], true, &["media", "ip"], &[]),
            el(p("omod-a"), "Optical mux/demux A", p("pop-a"), op, &[FunctionalGroup::OmOd], false, &["media"], &["ip"]),
            el(
                p("ila"),
                "In-line optical amplifier",
                p("hut"),
                op,
                &[FunctionalGroup::OpticalAmplifier],
                true,
                &["media"],
                &["ip"],
            ),
            el(p("omod-b"), "Optical mux/demux B", p("pop-b"), op, &[FunctionalGroup::OmOd], false, &["media"], &["ip"]),
            el(p("pe2"), "Provider-edge router B", p("pop-b"), op, &[FunctionalGroup::PeRouter], true, &["media", "ip"], &[]),
        ],
        links: vec![
            media_link("ln-m1", p("pe1"), p("omod-a")),
            media_link("ln-m2", p("omod-a"), p("ila")),
            media_link("ln-m3", p("ila"), p("omod-b")),
            media_link("ln-m4", p("omod-b"), p("pe2")),
            path_link(
                "ln-ip",
                "ip",
                p("pe1"),
                p("pe2"),
                vec![p("pe1"), p("omod-a"), p("ila"), p("omod-b"), p("pe2")],
            ),
        ],
        reference_points: vec![
            rp("rp-w1", RpDesignator::W, RpKind::RpiS, "media", p("omod-a"), p("pe1")),
            rp("rp-w2", RpDesignator::W, RpKind::RpiS, "media", p("omod-b"), p("pe2")),
        ],
        segments: vec![
            seg("seg-pop-a", SegmentName::Other("pop-a".to_string()), op, &["rp-w1"]),
            seg("seg-line", SegmentName::MetroCore, op, &["rp-w1", "rp-w2"]),
            seg("seg-pop-b", SegmentName::Other("pop-b".to_string()), op, &["rp-w2"]),
        ],
    }
}
