//! Core data types for layered metro-network models.
//!
//! A model is a set of layer networks (one or more transmission-media layers
//! at the bottom, path layers above), the sites and network elements that
//! populate them, links within each layer, typed reference points, and the
//! operator segments those reference points demarcate.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

/// Kind of a layer network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LayerKind {
    /// Bottom of the stack: fibre, copper, coax. Has no server layers.
    TransmissionMedia,
    /// Client layer served by lower layers (Ethernet, MPLS, IP, ...).
    Path,
}

impl LayerKind {
    pub fn token(&self) -> &'static str {
        match self {
            LayerKind::TransmissionMedia => "transmission-media",
            LayerKind::Path => "path",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "transmission-media" => Some(LayerKind::TransmissionMedia),
            "path" => Some(LayerKind::Path),
            _ => None,
        }
    }
}

impl Serialize for LayerKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// One layer network in the G.805 sense.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerNetwork {
    pub id: String,
    pub name: String,
    pub kind: LayerKind,
    /// Characteristic information carried at this layer (free text).
    pub characteristic_info: String,
    /// Direct server layers (client -> server). Empty iff transmission-media.
    pub server_layers: Vec<String>,
}

/// Physical space classes a site can occupy, from smallest street furniture
/// to a full central office.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpaceClass {
    Cabinet,
    Pedestal,
    Vault,
    ServiceRoom,
    CentralOffice,
    Headend,
    CustomerPremises,
    StreetNode,
    Other,
}

impl SpaceClass {
    pub fn token(&self) -> &'static str {
        match self {
            SpaceClass::Cabinet => "cabinet",
            SpaceClass::Pedestal => "pedestal",
            SpaceClass::Vault => "vault",
            SpaceClass::ServiceRoom => "service-room",
            SpaceClass::CentralOffice => "central-office",
            SpaceClass::Headend => "headend",
            SpaceClass::CustomerPremises => "customer-premises",
            SpaceClass::StreetNode => "street-node",
            SpaceClass::Other => "other",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "cabinet" => Some(SpaceClass::Cabinet),
            "pedestal" => Some(SpaceClass::Pedestal),
            "vault" => Some(SpaceClass::Vault),
            "service-room" => Some(SpaceClass::ServiceRoom),
            "central-office" => Some(SpaceClass::CentralOffice),
            "headend" => Some(SpaceClass::Headend),
            "customer-premises" => Some(SpaceClass::CustomerPremises),
            "street-node" => Some(SpaceClass::StreetNode),
            "other" => Some(SpaceClass::Other),
            _ => None,
        }
    }
}

impl Serialize for SpaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// A physical location that can host network elements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Site {
    pub id: String,
    pub name: String,
    pub location_label: String,
    pub space_class: SpaceClass,
    pub has_power: bool,
    /// Spare supply capacity in watts. Must be 0 when `has_power` is false.
    pub power_headroom_w: f64,
    pub has_ethernet_uplink: bool,
}

/// Functional groups an element can implement. Closed set; use `Other` plus
/// a descriptive element name for anything not listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionalGroup {
    Nt1,
    Nt2,
    Af,
    Rg,
    Te,
    Onu,
    Olt,
    Msan,
    Dslam,
    Cm,
    Cmts,
    Ru,
    Du,
    Csr,
    OmOd,
    PowerSplitter,
    PRouter,
    PeRouter,
    CeRouter,
    OpticalAmplifier,
    EthernetSwitch,
    Other,
}

impl FunctionalGroup {
    pub fn token(&self) -> &'static str {
        match self {
            FunctionalGroup::Nt1 => "NT1",
            FunctionalGroup::Nt2 => "NT2",
            FunctionalGroup::Af => "AF",
            FunctionalGroup::Rg => "RG",
            FunctionalGroup::Te => "TE",
            FunctionalGroup::Onu => "ONU",
            FunctionalGroup::Olt => "OLT",
            FunctionalGroup::Msan => "MSAN",
            FunctionalGroup::Dslam => "DSLAM",
            FunctionalGroup::Cm => "CM",
            FunctionalGroup::Cmts => "CMTS",
            FunctionalGroup::Ru => "RU",
            FunctionalGroup::Du => "DU",
            FunctionalGroup::Csr => "CSR",
            FunctionalGroup::OmOd => "OM-OD",
            FunctionalGroup::PowerSplitter => "power-splitter",
            FunctionalGroup::PRouter => "P-router",
            FunctionalGroup::PeRouter => "PE-router",
            FunctionalGroup::CeRouter => "CE-router",
            FunctionalGroup::OpticalAmplifier => "optical-amplifier",
            FunctionalGroup::EthernetSwitch => "ethernet-switch",
            FunctionalGroup::Other => "other",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        use FunctionalGroup::*;
        Some(match s {
            "NT1" => Nt1,
            "NT2" => Nt2,
            "AF" => Af,
            "RG" => Rg,
            "TE" => Te,
            "ONU" => Onu,
            "OLT" => Olt,
            "MSAN" => Msan,
            "DSLAM" => Dslam,
            "CM" => Cm,
            "CMTS" => Cmts,
            "RU" => Ru,
            "DU" => Du,
            "CSR" => Csr,
            "OM-OD" => OmOd,
            "power-splitter" => PowerSplitter,
            "P-router" => PRouter,
            "PE-router" => PeRouter,
            "CE-router" => CeRouter,
            "optical-amplifier" => OpticalAmplifier,
            "ethernet-switch" => EthernetSwitch,
            "other" => Other,
            _ => return None,
        })
    }
}

impl Serialize for FunctionalGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// A piece of equipment (or a passive device) hosted at a site.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkElement {
    pub id: String,
    pub name: String,
    pub site_id: String,
    pub operator_id: String,
    pub functional_groups: Vec<FunctionalGroup>,
    pub powered: bool,
    /// Rated draw in watts. Must be 0 when `powered` is false.
    pub power_draw_w: f64,
    /// Layers where the element terminates or switches traffic.
    pub present_at_layers: Vec<String>,
    /// Layers the element forwards through without terminating (invisible
    /// to that layer's control plane). Disjoint from `present_at_layers`.
    pub transparent_at_layers: Vec<String>,
}

impl NetworkElement {
    pub fn has_group(&self, g: FunctionalGroup) -> bool {
        self.functional_groups.contains(&g)
    }

    pub fn present_at(&self, layer: &str) -> bool {
        self.present_at_layers.iter().any(|l| l == layer)
    }

    pub fn transparent_at(&self, layer: &str) -> bool {
        self.transparent_at_layers.iter().any(|l| l == layer)
    }
}

/// A link between two elements within one layer network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Link {
    pub id: String,
    pub layer_id: String,
    pub endpoint_a: String,
    pub endpoint_b: String,
    /// For path-layer links: the ordered element sequence (from `endpoint_a`
    /// to `endpoint_b`) of the serving trail at a direct server layer.
    /// Empty iff the link's layer is transmission-media.
    pub server_trail: Vec<String>,
}

impl Link {
    /// True if this link joins `x` and `y` in either orientation.
    pub fn joins(&self, x: &str, y: &str) -> bool {
        (self.endpoint_a == x && self.endpoint_b == y)
            || (self.endpoint_a == y && self.endpoint_b == x)
    }
}

/// Named reference-point designators drawn from the access standards, plus a
/// custom escape hatch. Any token not in the fixed list parses as `Custom`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RpDesignator {
    S,
    T,
    U,
    U1,
    Pai,
    Di,
    V,
    W,
    RS,
    Cmci,
    AEphemeral,
    UniLegacy,
    Custom(String),
}

impl RpDesignator {
    pub fn token(&self) -> &str {
        match self {
            RpDesignator::S => "S",
            RpDesignator::T => "T",
            RpDesignator::U => "U",
            RpDesignator::U1 => "U1",
            RpDesignator::Pai => "PAI",
            RpDesignator::Di => "DI",
            RpDesignator::V => "V",
            RpDesignator::W => "W",
            RpDesignator::RS => "R-S",
            RpDesignator::Cmci => "CMCI",
            RpDesignator::AEphemeral => "A-ephemeral",
            RpDesignator::UniLegacy => "UNI-legacy",
            RpDesignator::Custom(label) => label,
        }
    }

    /// Every string is a valid designator: fixed tokens map to their named
    /// variant, anything else becomes `Custom`.
    pub fn from_token(s: &str) -> Self {
        match s {
            "S" => RpDesignator::S,
            "T" => RpDesignator::T,
            "U" => RpDesignator::U,
            "U1" => RpDesignator::U1,
            "PAI" => RpDesignator::Pai,
            "DI" => RpDesignator::Di,
            "V" => RpDesignator::V,
            "W" => RpDesignator::W,
            "R-S" => RpDesignator::RS,
            "CMCI" => RpDesignator::Cmci,
            "A-ephemeral" => RpDesignator::AEphemeral,
            "UNI-legacy" => RpDesignator::UniLegacy,
            other => RpDesignator::Custom(other.to_string()),
        }
    }
}

impl Serialize for RpDesignator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// Kind of a reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RpKind {
    /// Physical interconnection at a transmission-media adjacency.
    RpiN,
    /// Logical interconnection at a path layer (may span several RPI-Ns).
    RpiS,
    /// Inter-domain interface (between organizations).
    IrDI,
    /// Intra-domain interface (within one organization).
    IaDI,
    /// Vertical client-to-server handoff at a single node.
    AccessPoint,
}

impl RpKind {
    pub fn token(&self) -> &'static str {
        match self {
            RpKind::RpiN => "RPI-N",
            RpKind::RpiS => "RPI-S",
            RpKind::IrDI => "IrDI",
            RpKind::IaDI => "IaDI",
            RpKind::AccessPoint => "access-point",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "RPI-N" => Some(RpKind::RpiN),
            "RPI-S" => Some(RpKind::RpiS),
            "IrDI" => Some(RpKind::IrDI),
            "IaDI" => Some(RpKind::IaDI),
            "access-point" => Some(RpKind::AccessPoint),
            _ => None,
        }
    }
}

impl Serialize for RpKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// Whether a reference point is reachable from outside the equipment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Accessibility {
    External,
    /// Internal to one device; endpoints then name functional groups of the
    /// subsuming element rather than element ids.
    Subsumed,
}

impl Accessibility {
    pub fn token(&self) -> &'static str {
        match self {
            Accessibility::External => "external",
            Accessibility::Subsumed => "subsumed",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "external" => Some(Accessibility::External),
            "subsumed" => Some(Accessibility::Subsumed),
            _ => None,
        }
    }
}

impl Serialize for Accessibility {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// A typed reference point between two elements (or, when subsumed, between
/// two functional groups inside one element).
///
/// Orientation convention: `upstream_element` is the network-core side,
/// `downstream_element` the subscriber side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferencePoint {
    pub id: String,
    pub designator: RpDesignator,
    pub kind: RpKind,
    pub layer_id: String,
    pub upstream_element: String,
    pub downstream_element: String,
    pub accessibility: Accessibility,
    /// Set iff `accessibility` is `Subsumed`.
    pub subsuming_element: Option<String>,
}

impl ReferencePoint {
    pub fn is_subsumed(&self) -> bool {
        self.accessibility == Accessibility::Subsumed
    }

    /// Unordered endpoint pair, for coincidence checks.
    pub fn endpoint_pair(&self) -> (String, String) {
        let (a, b) = (&self.upstream_element, &self.downstream_element);
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }
}

/// Well-known segment names, with a labelled escape hatch.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SegmentName {
    Customer,
    Access,
    Aggregation,
    MetroCore,
    Fronthaul,
    Midhaul,
    Backhaul,
    Other(String),
}

impl SegmentName {
    pub fn token(&self) -> &str {
        match self {
            SegmentName::Customer => "customer",
            SegmentName::Access => "access",
            SegmentName::Aggregation => "aggregation",
            SegmentName::MetroCore => "metro-core",
            SegmentName::Fronthaul => "fronthaul",
            SegmentName::Midhaul => "midhaul",
            SegmentName::Backhaul => "backhaul",
            SegmentName::Other(label) => label,
        }
    }

    pub fn from_token(s: &str) -> Self {
        match s {
            "customer" => SegmentName::Customer,
            "access" => SegmentName::Access,
            "aggregation" => SegmentName::Aggregation,
            "metro-core" => SegmentName::MetroCore,
            "fronthaul" => SegmentName::Fronthaul,
            "midhaul" => SegmentName::Midhaul,
            "backhaul" => SegmentName::Backhaul,
            other => SegmentName::Other(other.to_string()),
        }
    }
}

impl Serialize for SegmentName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

/// A bounded portion of the network owned by one operator, demarcated by
/// "like" reference points (all bounds share one layer).
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub id: String,
    pub name: SegmentName,
    pub operator_id: String,
    pub bounding_rp_ids: BTreeSet<String>,
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Segment", 4)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("operator_id", &self.operator_id)?;
        // BTreeSet serializes in sorted order, which is the canonical form.
        st.serialize_field("bounding_rp_ids", &self.bounding_rp_ids)?;
        st.end()
    }
}

/// Document-level descriptive metadata.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Metadata {
    pub name: String,
    pub author: String,
    pub date: String,
    /// Free-form annotations (catalog templates record their standards
    /// anchors and assumptions here).
    pub notes: Vec<String>,
}

/// The unvalidated input to `build_model`: plain collections as they appear
/// in a document, in any order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelParts {
    pub metadata: Metadata,
    pub layers: Vec<LayerNetwork>,
    pub sites: Vec<Site>,
    pub elements: Vec<NetworkElement>,
    pub links: Vec<Link>,
    pub reference_points: Vec<ReferencePoint>,
    pub segments: Vec<Segment>,
}

/// A validated, canonicalized model. Construct via [`crate::model::build_model`].
///
/// All collections are id-indexed; set-like lists inside records are sorted
/// and deduplicated, so two models built from the same records in any input
/// order compare equal and serialize byte-identically.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub(crate) metadata: Metadata,
    pub(crate) layers: BTreeMap<String, LayerNetwork>,
    pub(crate) sites: BTreeMap<String, Site>,
    pub(crate) elements: BTreeMap<String, NetworkElement>,
    pub(crate) links: BTreeMap<String, Link>,
    pub(crate) reference_points: BTreeMap<String, ReferencePoint>,
    pub(crate) segments: BTreeMap<String, Segment>,
    /// Bottom-up topological order of layers (media layers first).
    pub(crate) layer_order: Vec<String>,
}

impl Model {
    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn layers(&self) -> impl Iterator<Item = &LayerNetwork> {
        self.layers.values()
    }

    pub fn layer(&self, id: &str) -> Option<&LayerNetwork> {
        self.layers.get(id)
    }

    pub fn sites(&self) -> impl Iterator<Item = &Site> {
        self.sites.values()
    }

    pub fn site(&self, id: &str) -> Option<&Site> {
        self.sites.get(id)
    }

    pub fn elements(&self) -> impl Iterator<Item = &NetworkElement> {
        self.elements.values()
    }

    pub fn element(&self, id: &str) -> Option<&NetworkElement> {
        self.elements.get(id)
    }

    pub fn links(&self) -> impl Iterator<Item = &Link> {
        self.links.values()
    }

    pub fn link(&self, id: &str) -> Option<&Link> {
        self.links.get(id)
    }

    pub fn reference_points(&self) -> impl Iterator<Item = &ReferencePoint> {
        self.reference_points.values()
    }

    pub fn reference_point(&self, id: &str) -> Option<&ReferencePoint> {
        self.reference_points.get(id)
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.values()
    }

    pub fn segment(&self, id: &str) -> Option<&Segment> {
        self.segments.get(id)
    }

    /// Links belonging to one layer, in id order.
    pub fn links_at_layer<'a>(&'a self, layer_id: &'a str) -> impl Iterator<Item = &'a Link> {
        self.links.values().filter(move |l| l.layer_id == layer_id)
    }

    /// Links at `layer_id` joining `x` and `y` in either orientation, in id
    /// order.
    pub fn links_joining(&self, layer_id: &str, x: &str, y: &str) -> Vec<&Link> {
        self.links
            .values()
            .filter(|l| l.layer_id == layer_id && l.joins(x, y))
            .collect()
    }

    /// Direct server layers of `layer_id`, and a transitive-closure helper.
    pub fn transitive_server_layers(&self, layer_id: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![layer_id.to_string()];
        while let Some(l) = stack.pop() {
            if let Some(layer) = self.layers.get(&l) {
                for s in &layer.server_layers {
                    if seen.insert(s.clone()) {
                        stack.push(s.clone());
                    }
                }
            }
        }
        seen
    }

    /// Rebuild the plain-collection view (sorted by id) of this model.
    pub fn to_parts(&self) -> ModelParts {
        ModelParts {
            metadata: self.metadata.clone(),
            layers: self.layers.values().cloned().collect(),
            sites: self.sites.values().cloned().collect(),
            elements: self.elements.values().cloned().collect(),
            links: self.links.values().cloned().collect(),
            reference_points: self.reference_points.values().cloned().collect(),
            segments: self.segments.values().cloned().collect(),
        }
    }
}
