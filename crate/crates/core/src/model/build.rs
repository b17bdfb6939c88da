//! Structural validation: turning loose [`ModelParts`] into a [`Model`].
//!
//! `build_model` either returns a canonicalized model or the *full* list of
//! structural violations, order-normalized by (code, subject, path). Checks
//! that depend on a reference that failed to resolve are skipped for that
//! record only; everything else is still reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::types::*;

/// Machine-readable codes for structural violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    DupId,
    DanglingRef,
    NoMediaLayer,
    LayerCycle,
    MediaUnreachable,
    MediaHasServers,
    PowerFlag,
    LayerSetsOverlap,
    TransparentUnserved,
    EndpointNotPresent,
    TrailOnMedia,
    TrailMissing,
    TrailEndpoints,
    TrailNotAtServer,
    RpinNotAdjacent,
    AccessPointSplit,
    SubsumedFlag,
    SegmentBoundsUnlike,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        use ViolationCode::*;
        match self {
            DupId => "E-DUP-ID",
            DanglingRef => "E-DANGLING-REF",
            NoMediaLayer => "E-NO-MEDIA-LAYER",
            LayerCycle => "E-LAYER-CYCLE",
            MediaUnreachable => "E-MEDIA-UNREACHABLE",
            MediaHasServers => "E-MEDIA-HAS-SERVERS",
            PowerFlag => "E-POWER-FLAG",
            LayerSetsOverlap => "E-LAYER-SETS-OVERLAP",
            TransparentUnserved => "E-TRANSPARENT-UNSERVED",
            EndpointNotPresent => "E-ENDPOINT-NOT-PRESENT",
            TrailOnMedia => "E-TRAIL-ON-MEDIA",
            TrailMissing => "E-TRAIL-MISSING",
            TrailEndpoints => "E-TRAIL-ENDPOINTS",
            TrailNotAtServer => "E-TRAIL-NOT-AT-SERVER",
            RpinNotAdjacent => "E-RPIN-NOT-ADJACENT",
            AccessPointSplit => "E-ACCESS-POINT-SPLIT",
            SubsumedFlag => "E-SUBSUMED-FLAG",
            SegmentBoundsUnlike => "E-SEGMENT-BOUNDS-UNLIKE",
        }
    }
}

impl Serialize for ViolationCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One structural violation found while building a model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// Primary subject id (empty for model-level findings).
    pub subject: String,
    /// Document-style path to the offending field, e.g.
    /// `elements[onu-1].site_id`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} — {} [{}]",
            self.code.as_str(),
            if self.subject.is_empty() { "(model)" } else { &self.subject },
            self.message,
            self.path
        )
    }
}

struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    fn push(&mut self, code: ViolationCode, subject: &str, path: String, message: String) {
        self.violations.push(Violation {
            code,
            subject: subject.to_string(),
            path,
            message,
        });
    }
}

/// Validate `parts` against every structural invariant and return the
/// canonical [`Model`], or the full violation list.
pub fn build_model(parts: ModelParts) -> Result<Model, Vec<Violation>> {
    let mut chk = Checker { violations: Vec::new() };

    // --- duplicate ids, keeping the first occurrence of each ---------------
    let layers = index_by_id(parts.layers, "layers", |l: &LayerNetwork| &l.id, &mut chk);
    let sites = index_by_id(parts.sites, "sites", |s: &Site| &s.id, &mut chk);
    let elements = index_by_id(parts.elements, "elements", |e: &NetworkElement| &e.id, &mut chk);
    let links = index_by_id(parts.links, "links", |l: &Link| &l.id, &mut chk);
    let rps = index_by_id(
        parts.reference_points,
        "reference_points",
        |r: &ReferencePoint| &r.id,
        &mut chk,
    );
    let segments = index_by_id(parts.segments, "segments", |s: &Segment| &s.id, &mut chk);

    // --- canonicalize set-like lists ---------------------------------------
    let mut layers: BTreeMap<String, LayerNetwork> = layers;
    for l in layers.values_mut() {
        l.server_layers.sort();
        l.server_layers.dedup();
    }
    let mut elements: BTreeMap<String, NetworkElement> = elements;
    for e in elements.values_mut() {
        e.functional_groups.sort_by_key(|g| g.token());
        e.functional_groups.dedup();
        e.present_at_layers.sort();
        e.present_at_layers.dedup();
        e.transparent_at_layers.sort();
        e.transparent_at_layers.dedup();
    }

    // --- dangling references ------------------------------------------------
    for (id, l) in &layers {
        for (i, s) in l.server_layers.iter().enumerate() {
            if !layers.contains_key(s) {
                chk.push(
                    ViolationCode::DanglingRef,
                    s,
                    format!("layers[{id}].server_layers[{i}]"),
                    format!("layer {id} names unknown server layer {s}"),
                );
            }
        }
    }
    for (id, e) in &elements {
        if !sites.contains_key(&e.site_id) {
            chk.push(
                ViolationCode::DanglingRef,
                &e.site_id,
                format!("elements[{id}].site_id"),
                format!("element {id} names unknown site {}", e.site_id),
            );
        }
        for (field, list) in [
            ("present_at_layers", &e.present_at_layers),
            ("transparent_at_layers", &e.transparent_at_layers),
        ] {
            for (i, l) in list.iter().enumerate() {
                if !layers.contains_key(l) {
                    chk.push(
                        ViolationCode::DanglingRef,
                        l,
                        format!("elements[{id}].{field}[{i}]"),
                        format!("element {id} names unknown layer {l}"),
                    );
                }
            }
        }
    }
    for (id, l) in &links {
        if !layers.contains_key(&l.layer_id) {
            chk.push(
                ViolationCode::DanglingRef,
                &l.layer_id,
                format!("links[{id}].layer_id"),
                format!("link {id} names unknown layer {}", l.layer_id),
            );
        }
        for (field, ep) in [("endpoint_a", &l.endpoint_a), ("endpoint_b", &l.endpoint_b)] {
            if !elements.contains_key(ep) {
                chk.push(
                    ViolationCode::DanglingRef,
                    ep,
                    format!("links[{id}].{field}"),
                    format!("link {id} names unknown element {ep}"),
                );
            }
        }
        for (i, t) in l.server_trail.iter().enumerate() {
            if !elements.contains_key(t) {
                chk.push(
                    ViolationCode::DanglingRef,
                    t,
                    format!("links[{id}].server_trail[{i}]"),
                    format!("link {id} trail names unknown element {t}"),
                );
            }
        }
    }
    for (id, r) in &rps {
        if !layers.contains_key(&r.layer_id) {
            chk.push(
                ViolationCode::DanglingRef,
                &r.layer_id,
                format!("reference_points[{id}].layer_id"),
                format!("reference point {id} names unknown layer {}", r.layer_id),
            );
        }
        // Subsumed endpoints name functional groups, not elements; their
        // validity is a reference-configuration rule (R5), not a build check.
        if !r.is_subsumed() {
            for (field, ep) in [
                ("upstream_element", &r.upstream_element),
                ("downstream_element", &r.downstream_element),
            ] {
                if !elements.contains_key(ep) {
                    chk.push(
                        ViolationCode::DanglingRef,
                        ep,
                        format!("reference_points[{id}].{field}"),
                        format!("reference point {id} names unknown element {ep}"),
                    );
                }
            }
        }
        if let Some(sub) = &r.subsuming_element {
            if !elements.contains_key(sub) {
                chk.push(
                    ViolationCode::DanglingRef,
                    sub,
                    format!("reference_points[{id}].subsuming_element"),
                    format!("reference point {id} names unknown element {sub}"),
                );
            }
        }
    }
    for (id, s) in &segments {
        for rp in &s.bounding_rp_ids {
            if !rps.contains_key(rp) {
                chk.push(
                    ViolationCode::DanglingRef,
                    rp,
                    format!("segments[{id}].bounding_rp_ids"),
                    format!("segment {id} names unknown reference point {rp}"),
                );
            }
        }
    }

    // --- layer graph: media presence, acyclicity, reachability --------------
    if !layers.values().any(|l| l.kind == LayerKind::TransmissionMedia) {
        chk.push(
            ViolationCode::NoMediaLayer,
            "",
            "layers".into(),
            "model declares no transmission-media layer".into(),
        );
    }
    for (id, l) in &layers {
        if l.kind == LayerKind::TransmissionMedia && !l.server_layers.is_empty() {
            chk.push(
                ViolationCode::MediaHasServers,
                id,
                format!("layers[{id}].server_layers"),
                format!("transmission-media layer {id} must not declare server layers"),
            );
        }
    }
    let cyclic = layers_on_cycles(&layers);
    for id in &cyclic {
        chk.push(
            ViolationCode::LayerCycle,
            id,
            format!("layers[{id}].server_layers"),
            format!("layer {id} participates in a client/server cycle"),
        );
    }
    // Reachability of a media layer (skip cycle-tainted layers: reported above).
    for (id, l) in &layers {
        if l.kind != LayerKind::Path || cyclic.contains(id) {
            continue;
        }
        if !reaches_media(id, &layers, &cyclic) {
            chk.push(
                ViolationCode::MediaUnreachable,
                id,
                format!("layers[{id}].server_layers"),
                format!("path layer {id} reaches no transmission-media layer"),
            );
        }
    }

    // --- sites ---------------------------------------------------------------
    for (id, s) in &sites {
        if s.power_headroom_w < 0.0 {
            chk.push(
                ViolationCode::PowerFlag,
                id,
                format!("sites[{id}].power_headroom_w"),
                format!("site {id} declares negative power headroom"),
            );
        } else if !s.has_power && s.power_headroom_w > 0.0 {
            chk.push(
                ViolationCode::PowerFlag,
                id,
                format!("sites[{id}].power_headroom_w"),
                format!("site {id} has no power but declares positive headroom"),
            );
        }
    }

    // --- elements -------------------------------------------------------------
    for (id, e) in &elements {
        if e.power_draw_w < 0.0 {
            chk.push(
                ViolationCode::PowerFlag,
                id,
                format!("elements[{id}].power_draw_w"),
                format!("element {id} declares negative power draw"),
            );
        } else if !e.powered && e.power_draw_w > 0.0 {
            chk.push(
                ViolationCode::PowerFlag,
                id,
                format!("elements[{id}].power_draw_w"),
                format!("element {id} is unpowered but declares positive draw"),
            );
        }
        for l in &e.present_at_layers {
            if e.transparent_at_layers.contains(l) {
                chk.push(
                    ViolationCode::LayerSetsOverlap,
                    id,
                    format!("elements[{id}].transparent_at_layers"),
                    format!("element {id} is both present and transparent at layer {l}"),
                );
            }
        }
        for t in &e.transparent_at_layers {
            if !layers.contains_key(t) || cyclic.contains(t) {
                continue; // dangling/cyclic already reported
            }
            let servers = transitive_servers(t, &layers, &cyclic);
            if !e.present_at_layers.iter().any(|p| servers.contains(p)) {
                chk.push(
                    ViolationCode::TransparentUnserved,
                    id,
                    format!("elements[{id}].transparent_at_layers"),
                    format!(
                        "element {id} is transparent at {t} but present at none of its server layers"
                    ),
                );
            }
        }
    }

    // --- links -----------------------------------------------------------------
    for (id, l) in &links {
        let Some(layer) = layers.get(&l.layer_id) else { continue };
        for ep in [&l.endpoint_a, &l.endpoint_b] {
            if let Some(e) = elements.get(ep) {
                if !e.present_at(&l.layer_id) {
                    chk.push(
                        ViolationCode::EndpointNotPresent,
                        id,
                        format!("links[{id}]"),
                        format!("endpoint {ep} is not present at layer {}", l.layer_id),
                    );
                }
            }
        }
        match layer.kind {
            LayerKind::TransmissionMedia => {
                if !l.server_trail.is_empty() {
                    chk.push(
                        ViolationCode::TrailOnMedia,
                        id,
                        format!("links[{id}].server_trail"),
                        format!("media-layer link {id} must not declare a server trail"),
                    );
                }
            }
            LayerKind::Path => {
                if l.server_trail.is_empty() {
                    chk.push(
                        ViolationCode::TrailMissing,
                        id,
                        format!("links[{id}].server_trail"),
                        format!("path-layer link {id} must declare a server trail"),
                    );
                    continue;
                }
                if l.server_trail.first() != Some(&l.endpoint_a)
                    || l.server_trail.last() != Some(&l.endpoint_b)
                {
                    chk.push(
                        ViolationCode::TrailEndpoints,
                        id,
                        format!("links[{id}].server_trail"),
                        format!(
                            "server trail must run from {} to {}",
                            l.endpoint_a, l.endpoint_b
                        ),
                    );
                }
                for (i, t) in l.server_trail.iter().enumerate() {
                    let Some(e) = elements.get(t) else { continue };
                    let at_server = layer
                        .server_layers
                        .iter()
                        .any(|s| e.present_at(s) || e.transparent_at(s));
                    if !at_server {
                        chk.push(
                            ViolationCode::TrailNotAtServer,
                            id,
                            format!("links[{id}].server_trail[{i}]"),
                            format!(
                                "trail element {t} is neither present nor transparent at a server layer of {}",
                                l.layer_id
                            ),
                        );
                    }
                }
            }
        }
    }

    // --- reference points ---------------------------------------------------------
    for (id, r) in &rps {
        let sub_set = r.subsuming_element.is_some();
        if r.is_subsumed() != sub_set {
            chk.push(
                ViolationCode::SubsumedFlag,
                id,
                format!("reference_points[{id}].subsuming_element"),
                if sub_set {
                    format!("reference point {id} declares a subsuming element but is not marked subsumed")
                } else {
                    format!("subsumed reference point {id} must declare its subsuming element")
                },
            );
        }
        if r.kind == RpKind::RpiN {
            if r.is_subsumed() {
                chk.push(
                    ViolationCode::RpinNotAdjacent,
                    id,
                    format!("reference_points[{id}].kind"),
                    format!(
                        "subsumed reference point {id} cannot be RPI-N (no physical adjacency)"
                    ),
                );
            } else if let Some(layer) = layers.get(&r.layer_id) {
                if layer.kind != LayerKind::TransmissionMedia {
                    chk.push(
                        ViolationCode::RpinNotAdjacent,
                        id,
                        format!("reference_points[{id}].layer_id"),
                        format!("RPI-N {id} must sit at a transmission-media layer"),
                    );
                } else {
                    let joined = links.values().any(|l| {
                        l.layer_id == r.layer_id
                            && l.joins(&r.upstream_element, &r.downstream_element)
                    });
                    if !joined {
                        chk.push(
                            ViolationCode::RpinNotAdjacent,
                            id,
                            format!("reference_points[{id}]"),
                            format!(
                                "RPI-N {id} endpoints {} and {} share no link at layer {}",
                                r.upstream_element, r.downstream_element, r.layer_id
                            ),
                        );
                    }
                }
            }
        }
        if r.kind == RpKind::AccessPoint && r.upstream_element != r.downstream_element {
            chk.push(
                ViolationCode::AccessPointSplit,
                id,
                format!("reference_points[{id}]"),
                format!("access point {id} must join two layers at a single node"),
            );
        }
    }

    // --- segments ----------------------------------------------------------------
    for (id, s) in &segments {
        let mut seen_layers: BTreeSet<&str> = BTreeSet::new();
        for rp in &s.bounding_rp_ids {
            if let Some(r) = rps.get(rp) {
                seen_layers.insert(r.layer_id.as_str());
            }
        }
        if seen_layers.len() > 1 {
            chk.push(
                ViolationCode::SegmentBoundsUnlike,
                id,
                format!("segments[{id}].bounding_rp_ids"),
                format!(
                    "segment {id} bounds span multiple layers: {}",
                    seen_layers.into_iter().collect::<Vec<_>>().join(", ")
                ),
            );
        }
    }

    if !chk.violations.is_empty() {
        let mut v = chk.violations;
        v.sort_by(|a, b| {
            (a.code.as_str(), &a.subject, &a.path).cmp(&(b.code.as_str(), &b.subject, &b.path))
        });
        v.dedup();
        return Err(v);
    }

    let layer_order = compute_layer_order(&layers);
    Ok(Model {
        metadata: parts.metadata,
        layers,
        sites,
        elements,
        links,
        reference_points: rps,
        segments,
        layer_order,
    })
}

fn index_by_id<T>(
    items: Vec<T>,
    collection: &str,
    id_of: impl Fn(&T) -> &String,
    chk: &mut Checker,
) -> BTreeMap<String, T> {
    let mut map = BTreeMap::new();
    for item in items {
        let id = id_of(&item).clone();
        match map.entry(id) {
            std::collections::btree_map::Entry::Occupied(slot) => {
                let id = slot.key().clone();
                chk.push(
                    ViolationCode::DupId,
                    &id,
                    collection.to_string(),
                    format!("duplicate id {id} in {collection}"),
                );
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(item);
            }
        }
    }
    map
}

/// Layers that sit on an actual client/server cycle (self-reachable).
fn layers_on_cycles(layers: &BTreeMap<String, LayerNetwork>) -> BTreeSet<String> {
    let mut cyclic = BTreeSet::new();
    for start in layers.keys() {
        let mut stack: Vec<&str> = layers[start]
            .server_layers
            .iter()
            .map(|s| s.as_str())
            .collect();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        while let Some(l) = stack.pop() {
            if l == start {
                cyclic.insert(start.clone());
                break;
            }
            if !seen.insert(l) {
                continue;
            }
            if let Some(layer) = layers.get(l) {
                stack.extend(layer.server_layers.iter().map(|s| s.as_str()));
            }
        }
    }
    cyclic
}

fn transitive_servers(
    start: &str,
    layers: &BTreeMap<String, LayerNetwork>,
    cyclic: &BTreeSet<String>,
) -> BTreeSet<String> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start.to_string()];
    while let Some(l) = stack.pop() {
        if cyclic.contains(&l) {
            continue;
        }
        if let Some(layer) = layers.get(&l) {
            for s in &layer.server_layers {
                if seen.insert(s.clone()) {
                    stack.push(s.clone());
                }
            }
        }
    }
    seen
}

fn reaches_media(
    start: &str,
    layers: &BTreeMap<String, LayerNetwork>,
    cyclic: &BTreeSet<String>,
) -> bool {
    transitive_servers(start, layers, cyclic)
        .iter()
        .any(|l| layers.get(l).is_some_and(|x| x.kind == LayerKind::TransmissionMedia))
}

/// Bottom-up topological order: all transmission-media layers first (by id),
/// then each path layer once all of its servers are placed, ties by id.
/// Assumes an acyclic, media-reaching layer graph (guaranteed post-build).
pub(crate) fn compute_layer_order(layers: &BTreeMap<String, LayerNetwork>) -> Vec<String> {
    let mut order: Vec<String> = Vec::with_capacity(layers.len());
    let mut placed: BTreeSet<&str> = BTreeSet::new();
    for (id, l) in layers {
        if l.kind == LayerKind::TransmissionMedia {
            order.push(id.clone());
            placed.insert(id);
        }
    }
    loop {
        let mut advanced = false;
        for (id, l) in layers {
            if placed.contains(id.as_str()) {
                continue;
            }
            if l.server_layers.iter().all(|s| placed.contains(s.as_str())) {
                order.push(id.clone());
                placed.insert(id);
                advanced = true;
                break; // restart scan so ties resolve by id
            }
        }
        if !advanced {
            break;
        }
    }
    order
}
