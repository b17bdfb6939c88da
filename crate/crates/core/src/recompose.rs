//! Serial recomposition (segment capture) and multi-layer path expansion.
//!
//! Recomposition answers "which segment does each powered element belong
//! to?". Segments declare bounding reference points; each bound cuts the
//! links joining its endpoint pair at its layer (a subsumed bound instead
//! splits its subsuming element in two). The connected regions left behind
//! are claimed by the segments whose bounds fully account for a region's
//! boundary. Layers capture in server-first order, and an element captured
//! at a lower layer is never re-captured higher up.
//!
//! Path expansion substitutes every path-layer link with its server trail,
//! recursively, until only transmission-media hops remain — exposing the
//! elements a path rides through without terminating them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::model::{Link, Model, ReferencePoint, Segment};

/// How a powered element bisected by a subsumed bound was divided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StraddlerSplit {
    /// The subsumed reference point that cuts through the element.
    pub rp_id: String,
    /// Segment owning the element's network-core side.
    pub upstream_segment: String,
    /// Segment owning the element's subscriber side.
    pub downstream_segment: String,
}

/// The outcome of serial recomposition over all layers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageResult {
    /// Powered element id -> capturing segment id.
    pub assignment: BTreeMap<String, String>,
    /// Powered elements divided between two segments by a subsumed bound.
    pub straddlers: BTreeMap<String, StraddlerSplit>,
    /// Powered elements no segment captured.
    pub uncaptured: Vec<String>,
    /// One line per (layer, segment) capture, for audit.
    pub rp_trace: Vec<String>,
    pub warnings: Vec<String>,
}

impl CoverageResult {
    /// The segment(s) a powered element was assigned to, if any.
    pub fn segments_of(&self, element_id: &str) -> Vec<&str> {
        if let Some(seg) = self.assignment.get(element_id) {
            return vec![seg.as_str()];
        }
        if let Some(split) = self.straddlers.get(element_id) {
            return vec![split.upstream_segment.as_str(), split.downstream_segment.as_str()];
        }
        Vec::new()
    }
}

/// Graph nodes during capture: a whole element, or one side of an element
/// split by a subsumed bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Whole(String),
    UpHalf(String),
    DownHalf(String),
}

impl Node {
    fn element_id(&self) -> &str {
        match self {
            Node::Whole(e) | Node::UpHalf(e) | Node::DownHalf(e) => e,
        }
    }
}

/// Compute the segment capture for every powered element.
pub fn serial_recomposition(model: &Model) -> CoverageResult {
    let mut assignment: BTreeMap<String, String> = BTreeMap::new();
    let mut straddlers: BTreeMap<String, StraddlerSplit> = BTreeMap::new();
    let mut rp_trace: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    // Group segments by the (single) layer of their bounds.
    let mut segments_at: BTreeMap<String, Vec<&Segment>> = BTreeMap::new();
    for segment in model.segments() {
        match segment.bounding_rp_ids.iter().next() {
            Some(first) => {
                let layer = model
                    .reference_point(first)
                    .expect("bound ids are checked at build")
                    .layer_id
                    .clone();
                segments_at.entry(layer).or_default().push(segment);
            }
            None => warnings.push(format!(
                "segment {} has no bounding reference points and captures nothing",
                segment.id
            )),
        }
    }

    for layer_id in model.layer_order() {
        let Some(segments) = segments_at.get(layer_id.as_str()) else { continue };
        capture_layer(
            model,
            layer_id,
            segments,
            &mut assignment,
            &mut straddlers,
            &mut rp_trace,
            &mut warnings,
        );
    }

    let uncaptured: Vec<String> = model
        .elements()
        .filter(|e| {
            e.powered && !assignment.contains_key(&e.id) && !straddlers.contains_key(&e.id)
        })
        .map(|e| e.id.clone())
        .collect();

    warnings.sort();
    warnings.dedup();
    CoverageResult {
        assignment,
        straddlers,
        uncaptured,
        rp_trace,
        warnings,
    }
}

fn capture_layer(
    model: &Model,
    layer_id: &str,
    segments: &[&Segment],
    assignment: &mut BTreeMap<String, String>,
    straddlers: &mut BTreeMap<String, StraddlerSplit>,
    rp_trace: &mut Vec<String>,
    warnings: &mut Vec<String>,
) {
    // Bounds in force at this layer, split by accessibility.
    let mut external_bounds: BTreeMap<String, &ReferencePoint> = BTreeMap::new();
    // Subsuming element id -> the subsumed bound that splits it.
    let mut straddler_bounds: BTreeMap<String, &ReferencePoint> = BTreeMap::new();
    for segment in segments {
        for rp_id in &segment.bounding_rp_ids {
            let rp = model.reference_point(rp_id).expect("checked at build");
            if let Some(sub) = &rp.subsuming_element {
                let present = model
                    .element(sub)
                    .is_some_and(|e| e.present_at(layer_id));
                if !present {
                    warnings.push(format!(
                        "bound {} subsumes {}, which is not present at layer {}; it cuts nothing",
                        rp.id, sub, layer_id
                    ));
                    continue;
                }
                if let Some(existing) = straddler_bounds.get(sub) {
                    if existing.id != rp.id {
                        warnings.push(format!(
                            "element {} is split by both {} and {}; using {}",
                            sub, existing.id, rp.id, existing.id
                        ));
                    }
                } else {
                    straddler_bounds.insert(sub.clone(), rp);
                }
            } else {
                external_bounds.insert(rp.id.clone(), rp);
            }
        }
    }

    // Links cut by external bounds: link id -> the bound rp ids cutting it.
    let mut cut_rps: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for rp in external_bounds.values() {
        let joining = model.links_joining(layer_id, &rp.upstream_element, &rp.downstream_element);
        if joining.is_empty() {
            warnings.push(format!(
                "bound {} joins no link at layer {}; it cuts nothing",
                rp.id, layer_id
            ));
        }
        for link in joining {
            cut_rps.entry(link.id.clone()).or_default().insert(rp.id.clone());
        }
    }

    // Nodes: every element present at the layer; straddlers become halves.
    let mut index: BTreeMap<Node, usize> = BTreeMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let add_node = |node: Node, nodes: &mut Vec<Node>, index: &mut BTreeMap<Node, usize>| {
        if let Some(&i) = index.get(&node) {
            return i;
        }
        let i = nodes.len();
        index.insert(node.clone(), i);
        nodes.push(node);
        i
    };
    for element in model.elements() {
        if !element.present_at(layer_id) {
            continue;
        }
        if straddler_bounds.contains_key(&element.id) {
            add_node(Node::UpHalf(element.id.clone()), &mut nodes, &mut index);
            add_node(Node::DownHalf(element.id.clone()), &mut nodes, &mut index);
        } else {
            add_node(Node::Whole(element.id.clone()), &mut nodes, &mut index);
        }
    }

    // Which half of a straddler a link attaches to, read off the external
    // reference points co-located at the element.
    let side_of = |element: &str, other: &str, warnings: &mut Vec<String>| -> Node {
        let mut up = false;
        let mut down = false;
        for rp in model.reference_points() {
            if rp.is_subsumed() || rp.layer_id != layer_id {
                continue;
            }
            if rp.upstream_element == other && rp.downstream_element == element {
                up = true; // the neighbour is on the network-core side
            } else if rp.upstream_element == element && rp.downstream_element == other {
                down = true;
            }
        }
        match (up, down) {
            (true, false) => Node::UpHalf(element.to_string()),
            (false, true) => Node::DownHalf(element.to_string()),
            _ => {
                warnings.push(format!(
                    "cannot orient the {element}-{other} adjacency at straddler {element}; assuming the upstream side"
                ));
                Node::UpHalf(element.to_string())
            }
        }
    };

    let resolve = |end: &str, other: &str, warnings: &mut Vec<String>| -> Node {
        if straddler_bounds.contains_key(end) {
            side_of(end, other, warnings)
        } else {
            Node::Whole(end.to_string())
        }
    };

    // Edges (uncut links) and the cut records used to form boundaries.
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    struct Cut {
        rp_ids: BTreeSet<String>,
        side_a: usize,
        side_b: usize,
    }
    let mut cuts: Vec<Cut> = Vec::new();
    let layer_links: Vec<&Link> = model.links_at_layer(layer_id).collect();
    for link in layer_links {
        let a = resolve(&link.endpoint_a, &link.endpoint_b, warnings);
        let b = resolve(&link.endpoint_b, &link.endpoint_a, warnings);
        let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else { continue };
        if let Some(rp_ids) = cut_rps.get(&link.id) {
            cuts.push(Cut {
                rp_ids: rp_ids.clone(),
                side_a: ia,
                side_b: ib,
            });
        } else {
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
    }

    // Connected regions.
    let mut region = vec![usize::MAX; nodes.len()];
    let mut region_count = 0usize;
    for start in 0..nodes.len() {
        if region[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        region[start] = region_count;
        while let Some(n) = queue.pop_front() {
            for &m in &adjacency[n] {
                if region[m] == usize::MAX {
                    region[m] = region_count;
                    queue.push_back(m);
                }
            }
        }
        region_count += 1;
    }

    // Region boundaries, and the nodes where each bound touches a region
    // (the BFS sources for the hop-count tie-break).
    let mut boundary: Vec<BTreeSet<String>> = vec![BTreeSet::new(); region_count];
    let mut touch: Vec<BTreeMap<String, BTreeSet<usize>>> = vec![BTreeMap::new(); region_count];
    for cut in &cuts {
        for &side in [cut.side_a, cut.side_b].iter() {
            let r = region[side];
            for rp_id in &cut.rp_ids {
                boundary[r].insert(rp_id.clone());
                touch[r].entry(rp_id.clone()).or_default().insert(side);
            }
        }
    }
    for (element, rp) in &straddler_bounds {
        for node in [Node::UpHalf(element.clone()), Node::DownHalf(element.clone())] {
            if let Some(&i) = index.get(&node) {
                let r = region[i];
                boundary[r].insert(rp.id.clone());
                touch[r].entry(rp.id.clone()).or_default().insert(i);
            }
        }
    }

    // Claims: a segment claims a region when the region's entire boundary
    // consists of that segment's bounds.
    let mut claimants: Vec<Vec<&Segment>> = vec![Vec::new(); region_count];
    for r in 0..region_count {
        if boundary[r].is_empty() {
            continue;
        }
        for segment in segments {
            if boundary[r].is_subset(&segment.bounding_rp_ids) {
                claimants[r].push(segment);
            }
        }
    }

    // Resolve claims per node: largest share of the claimant's own bounds on
    // the region's boundary, then the node's hop distance to the claimant's
    // nearest bound, then segment id (with a warning).
    let mut node_choice: Vec<Option<&Segment>> = vec![None; nodes.len()];
    for r in 0..region_count {
        match claimants[r].len() {
            0 => {}
            1 => {
                for n in 0..nodes.len() {
                    if region[n] == r {
                        node_choice[n] = Some(claimants[r][0]);
                    }
                }
            }
            _ => {
                let distances: Vec<BTreeMap<usize, usize>> = claimants[r]
                    .iter()
                    .map(|segment| {
                        let sources: BTreeSet<usize> = segment
                            .bounding_rp_ids
                            .iter()
                            .filter_map(|rp| touch[r].get(rp))
                            .flatten()
                            .copied()
                            .collect();
                        bfs_distances(&adjacency, &sources)
                    })
                    .collect();
                for n in 0..nodes.len() {
                    if region[n] != r {
                        continue;
                    }
                    let mut ranked: Vec<(f64, usize, &Segment)> = claimants[r]
                        .iter()
                        .zip(&distances)
                        .map(|(segment, dist)| {
                            let fraction =
                                boundary[r].len() as f64 / segment.bounding_rp_ids.len() as f64;
                            let hops = dist.get(&n).copied().unwrap_or(usize::MAX);
                            (fraction, hops, *segment)
                        })
                        .collect();
                    ranked.sort_by(|x, y| {
                        y.0.total_cmp(&x.0)
                            .then(x.1.cmp(&y.1))
                            .then(x.2.id.cmp(&y.2.id))
                    });
                    if ranked[0].0 == ranked[1].0 && ranked[0].1 == ranked[1].1 {
                        warnings.push(format!(
                            "ambiguous capture at layer {layer_id}: {} claimed by both {} and {}; choosing {}",
                            nodes[n].element_id(),
                            ranked[0].2.id,
                            ranked[1].2.id,
                            ranked[0].2.id
                        ));
                    }
                    node_choice[n] = Some(ranked[0].2);
                }
            }
        }
    }

    // Assign powered, still-unassigned elements; merge straddler halves.
    let mut captured_by: BTreeMap<&str, (BTreeSet<String>, BTreeSet<String>)> = BTreeMap::new();
    let mut half_segments: BTreeMap<String, (Option<String>, Option<String>)> = BTreeMap::new();
    for (i, node) in nodes.iter().enumerate() {
        let Some(segment) = node_choice[i] else { continue };
        let element = model.element(node.element_id()).expect("nodes come from the model");
        if !element.powered
            || assignment.contains_key(&element.id)
            || straddlers.contains_key(&element.id)
        {
            continue;
        }
        match node {
            Node::Whole(id) => {
                assignment.insert(id.clone(), segment.id.clone());
                let entry = captured_by.entry(segment.id.as_str()).or_default();
                entry.0.insert(id.clone());
                entry.1.extend(boundary[region[i]].iter().cloned());
            }
            Node::UpHalf(id) => half_segments.entry(id.clone()).or_default().0 = Some(segment.id.clone()),
            Node::DownHalf(id) => half_segments.entry(id.clone()).or_default().1 = Some(segment.id.clone()),
        }
    }
    for (element, (up, down)) in half_segments {
        let rp = straddler_bounds[&element];
        match (up, down) {
            (Some(up_seg), Some(down_seg)) if up_seg == down_seg => {
                assignment.insert(element.clone(), up_seg.clone());
                let entry = captured_by.entry(seg_ref(segments, &up_seg)).or_default();
                entry.0.insert(element.clone());
                entry.1.insert(rp.id.clone());
            }
            (Some(up_seg), Some(down_seg)) => {
                let up_entry = captured_by.entry(seg_ref(segments, &up_seg)).or_default();
                up_entry.0.insert(format!("{element} (upstream half)"));
                up_entry.1.insert(rp.id.clone());
                let down_entry = captured_by.entry(seg_ref(segments, &down_seg)).or_default();
                down_entry.0.insert(format!("{element} (downstream half)"));
                down_entry.1.insert(rp.id.clone());
                straddlers.insert(
                    element.clone(),
                    StraddlerSplit {
                        rp_id: rp.id.clone(),
                        upstream_segment: up_seg,
                        downstream_segment: down_seg,
                    },
                );
            }
            (Some(seg), None) | (None, Some(seg)) => {
                warnings.push(format!(
                    "straddler {element} was captured on one side only; assigning all of it to {seg}"
                ));
                assignment.insert(element.clone(), seg.clone());
                let entry = captured_by.entry(seg_ref(segments, &seg)).or_default();
                entry.0.insert(element.clone());
                entry.1.insert(rp.id.clone());
            }
            (None, None) => {}
        }
    }

    for (segment_id, (elements, rps)) in captured_by {
        rp_trace.push(format!(
            "layer {layer_id}: {segment_id} captured [{}] via [{}]",
            join(&elements),
            join(&rps)
        ));
    }
}

/// Borrow the canonical segment id string from the segment list (keeps the
/// trace map keyed consistently with direct captures).
fn seg_ref<'a>(segments: &[&'a Segment], id: &str) -> &'a str {
    segments
        .iter()
        .find(|s| s.id == id)
        .map(|s| s.id.as_str())
        .expect("chosen segments come from this layer")
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(", ")
}

/// Multi-source BFS over the uncut adjacency. Used only to break capture
/// ties by distance-to-own-bound.
fn bfs_distances(adjacency: &[Vec<usize>], sources: &BTreeSet<usize>) -> BTreeMap<usize, usize> {
    let mut dist: BTreeMap<usize, usize> = sources.iter().map(|&s| (s, 0)).collect();
    let mut queue: VecDeque<usize> = sources.iter().copied().collect();
    while let Some(n) = queue.pop_front() {
        let d = dist[&n];
        for &m in &adjacency[n] {
            if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(m) {
                slot.insert(d + 1);
                queue.push_back(m);
            }
        }
    }
    dist
}

// ---------------------------------------------------------------------------
// Path expansion
// ---------------------------------------------------------------------------

/// One element of an expanded path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracedElement {
    pub id: String,
    /// True when the element was named in the request path (it terminates
    /// the request layer); false for elements the expansion uncovered.
    pub visible_at_request_layer: bool,
}

/// A path expanded down to transmission-media hops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathTrace {
    /// The transmission-media layer the expansion bottomed out at.
    pub layer_id: String,
    pub elements: Vec<TracedElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("E-UNKNOWN-LAYER: no layer network `{0}`")]
    UnknownLayer(String),
    #[error("E-UNKNOWN-ELEMENT: no element `{0}`")]
    UnknownElement(String),
    #[error("E-EMPTY-PATH: the request path has no elements")]
    EmptyPath,
    #[error("E-NOT-A-PATH: element `{element}` (position {position}) is not present at layer `{layer}`")]
    NotPresentAtLayer {
        position: usize,
        element: String,
        layer: String,
    },
    #[error("E-NOT-A-PATH: `{a}` and `{b}` (position {position}) share no usable link")]
    NotAPath { position: usize, a: String, b: String },
}

/// Expand a path at `layer_id` down to the transmission-media elements it
/// rides over, flagging which elements the request layer can actually see.
pub fn expand_path(model: &Model, layer_id: &str, path: &[String]) -> Result<PathTrace, ExpandError> {
    let layer = model
        .layer(layer_id)
        .ok_or_else(|| ExpandError::UnknownLayer(layer_id.to_string()))?;
    if path.is_empty() {
        return Err(ExpandError::EmptyPath);
    }
    for (position, id) in path.iter().enumerate() {
        let element = model
            .element(id)
            .ok_or_else(|| ExpandError::UnknownElement(id.clone()))?;
        if !element.present_at(layer_id) {
            return Err(ExpandError::NotPresentAtLayer {
                position,
                element: id.clone(),
                layer: layer_id.to_string(),
            });
        }
    }

    let mut media_layer: Option<String> = None;
    let mut expansion: Vec<String> = vec![path[0].clone()];
    for (position, pair) in path.windows(2).enumerate() {
        let step = expand_pair(model, &layer.id, &pair[0], &pair[1], position, &mut media_layer)?;
        expansion.extend(step.into_iter().skip(1));
    }

    // A single-element path traverses no links; fall back to the first
    // media layer in capture order.
    let layer_id = media_layer.unwrap_or_else(|| {
        model
            .layer_order()
            .first()
            .cloned()
            .unwrap_or_else(|| layer.id.clone())
    });
    let named: BTreeSet<&String> = path.iter().collect();
    Ok(PathTrace {
        layer_id,
        elements: expansion
            .into_iter()
            .map(|id| TracedElement {
                visible_at_request_layer: named.contains(&id),
                id,
            })
            .collect(),
    })
}

/// Expand one adjacent pair at `layer_id` to its media-level element run
/// (inclusive of both endpoints).
fn expand_pair(
    model: &Model,
    layer_id: &str,
    a: &str,
    b: &str,
    position: usize,
    media_layer: &mut Option<String>,
) -> Result<Vec<String>, ExpandError> {
    let layer = model.layer(layer_id).expect("caller verifies the layer");
    let links = model.links_joining(layer_id, a, b);
    let Some(link) = links.first() else {
        return Err(ExpandError::NotAPath {
            position,
            a: a.to_string(),
            b: b.to_string(),
        });
    };

    if layer.kind == crate::model::LayerKind::TransmissionMedia {
        media_layer.get_or_insert_with(|| layer_id.to_string());
        return Ok(vec![a.to_string(), b.to_string()]);
    }

    // Orient the declared trail from `a` to `b`.
    let mut trail: Vec<String> = link.server_trail.clone();
    if link.endpoint_a != a {
        trail.reverse();
    }

    let mut out = vec![a.to_string()];
    for hop in trail.windows(2) {
        // Pick the server layer carrying this hop: the most-client layer
        // (latest in capture order) among the direct servers that join the
        // pair; links within it are tried in id order.
        let server = layer
            .server_layers
            .iter()
            .filter(|s| !model.links_joining(s, &hop[0], &hop[1]).is_empty())
            .max_by_key(|s| model.layer_order().iter().position(|l| l == *s));
        let Some(server) = server else {
            return Err(ExpandError::NotAPath {
                position,
                a: hop[0].clone(),
                b: hop[1].clone(),
            });
        };
        let step = expand_pair(model, server, &hop[0], &hop[1], position, media_layer)?;
        out.extend(step.into_iter().skip(1));
    }
    Ok(out)
}

/// Powered elements a path rides through without the request layer seeing
/// them: the energy the path's operator would miss.
pub fn detect_hidden_consumers(
    model: &Model,
    layer_id: &str,
    path: &[String],
) -> Result<Vec<String>, ExpandError> {
    let trace = expand_path(model, layer_id, path)?;
    let mut hidden: Vec<String> = trace
        .elements
        .iter()
        .filter(|t| !t.visible_at_request_layer)
        .filter(|t| model.element(&t.id).is_some_and(|e| e.powered))
        .map(|t| t.id.clone())
        .collect();
    hidden.sort();
    hidden.dedup();
    Ok(hidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, TemplateId, TemplateParams};
    use crate::model::{build_model, Model};
    use crate::schema::parse_model;

    fn l3vpn() -> Model {
        let doc = include_str!("../tests/fixtures/l3vpn.metromodel.json");
        let parts = parse_model(doc).expect("fixture parses");
        build_model(parts.parts).expect("fixture builds")
    }

    fn template(id: TemplateId, integrated: bool) -> Model {
        let params = TemplateParams {
            integrated_cpe: integrated,
            ..TemplateParams::default()
        };
        build_model(instantiate(id, &params)).unwrap()
    }

    #[test]
    fn l3vpn_capture_assigns_p_routers_to_the_core() {
        let model = l3vpn();
        let coverage = serial_recomposition(&model);
        let want: BTreeMap<String, String> = [
            ("ce1", "seg-cust-a"),
            ("pe1", "seg-core"),
            ("p1", "seg-core"),
            ("p2", "seg-core"),
            ("pe2", "seg-core"),
            ("ce2", "seg-cust-b"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
        assert_eq!(coverage.assignment, want);
        assert!(coverage.straddlers.is_empty());
        assert!(coverage.uncaptured.is_empty());
        assert!(coverage.warnings.is_empty());
        assert!(!coverage.rp_trace.is_empty());
    }

    #[test]
    fn l3vpn_expansion_uncovers_the_p_routers() {
        let model = l3vpn();
        let path: Vec<String> = ["ce1", "pe1", "pe2", "ce2"].map(String::from).into();
        let trace = expand_path(&model, "ip", &path).unwrap();
        assert_eq!(trace.layer_id, "media");
        let ids: Vec<&str> = trace.elements.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["ce1", "pe1", "p1", "p2", "pe2", "ce2"]);
        let visible: Vec<bool> = trace
            .elements
            .iter()
            .map(|t| t.visible_at_request_layer)
            .collect();
        assert_eq!(visible, [true, true, false, false, true, true]);

        let hidden = detect_hidden_consumers(&model, "ip", &path).unwrap();
        assert_eq!(hidden, ["p1", "p2"]);
    }

    #[test]
    fn gpon_capture_without_integration() {
        let coverage = serial_recomposition(&template(TemplateId::Gpon, false));
        let get = |id: &str| coverage.assignment.get(id).map(String::as_str);
        assert_eq!(get("demo-agg"), Some("seg-aggregation"));
        assert_eq!(get("demo-olt"), Some("seg-access"));
        assert_eq!(get("demo-onu"), Some("seg-access"));
        assert_eq!(get("demo-rg"), Some("seg-customer"));
        assert_eq!(get("demo-te"), Some("seg-customer"));
        // The splitter is unpowered and therefore out of scope.
        assert_eq!(get("demo-split"), None);
        assert!(coverage.straddlers.is_empty());
        assert!(coverage.uncaptured.is_empty());
        assert!(coverage.warnings.is_empty());
    }

    #[test]
    fn gpon_integrated_cpe_straddles_the_subsumed_u() {
        let coverage = serial_recomposition(&template(TemplateId::Gpon, true));
        assert_eq!(coverage.assignment.get("demo-olt").unwrap(), "seg-access");
        assert_eq!(coverage.assignment.get("demo-te").unwrap(), "seg-customer");
        let split = coverage.straddlers.get("demo-onurg").expect("onurg straddles");
        assert_eq!(split.rp_id, "rp-u");
        assert_eq!(split.upstream_segment, "seg-access");
        assert_eq!(split.downstream_segment, "seg-customer");
        assert!(!coverage.assignment.contains_key("demo-onurg"));
        assert!(coverage.uncaptured.is_empty());
        assert!(coverage.warnings.is_empty());
    }

    #[test]
    fn every_powered_element_lands_in_exactly_one_bucket() {
        for id in TemplateId::ALL {
            for integrated in [false, true] {
                let model = template(id, integrated);
                let coverage = serial_recomposition(&model);
                for element in model.elements().filter(|e| e.powered) {
                    let assigned = coverage.assignment.contains_key(&element.id) as u8;
                    let straddling = coverage.straddlers.contains_key(&element.id) as u8;
                    let uncaptured = coverage.uncaptured.contains(&element.id) as u8;
                    assert_eq!(
                        assigned + straddling + uncaptured,
                        1,
                        "{} in {} (integrated={integrated})",
                        element.id,
                        id.as_str()
                    );
                }
                for id in coverage.assignment.keys() {
                    assert!(model.element(id).unwrap().powered);
                }
            }
        }
    }

    #[test]
    fn a_region_bounded_by_foreign_points_goes_uncaptured() {
        let params = TemplateParams::default();
        let mut parts = instantiate(TemplateId::FivegRuDuCsr, &params);
        parts.segments.retain(|s| s.id != "seg-midhaul");
        let coverage = serial_recomposition(&build_model(parts).unwrap());
        // The DU sits between the fronthaul and backhaul bounds, but neither
        // segment owns both; nobody may claim it.
        assert_eq!(coverage.uncaptured, ["demo-du"]);
        assert!(!coverage.assignment.contains_key("demo-du"));
    }

    #[test]
    fn capture_ties_fall_back_to_segment_id_with_a_warning() {
        let params = TemplateParams::default();
        let mut parts = instantiate(TemplateId::FivegRuDuCsr, &params);
        let mut twin = parts.segments[0].clone();
        assert_eq!(twin.id, "seg-fronthaul");
        twin.id = "seg-fronthaul-b".to_string();
        parts.segments.push(twin);
        let coverage = serial_recomposition(&build_model(parts).unwrap());
        assert_eq!(coverage.assignment.get("demo-ru").unwrap(), "seg-fronthaul");
        assert!(coverage
            .warnings
            .iter()
            .any(|w| w.contains("ambiguous capture")));
    }

    #[test]
    fn dwdm_expansion_uncovers_only_the_amplifier() {
        let model = template(TemplateId::IpOverDwdm, false);
        let path: Vec<String> = ["demo-pe1", "demo-pe2"].map(String::from).into();
        let trace = expand_path(&model, "ip", &path).unwrap();
        let ids: Vec<&str> = trace.elements.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(
            ids,
            ["demo-pe1", "demo-omod-a", "demo-ila", "demo-omod-b", "demo-pe2"]
        );
        // The muxes are unpowered, so only the amplifier is a hidden consumer.
        let hidden = detect_hidden_consumers(&model, "ip", &path).unwrap();
        assert_eq!(hidden, ["demo-ila"]);
    }

    #[test]
    fn ethernet_expansion_uncovers_the_media_converter() {
        let model = template(TemplateId::PtpEthernet, false);
        let path: Vec<String> = ["demo-agg", "demo-sw", "demo-rg", "demo-te"].map(String::from).into();
        let hidden = detect_hidden_consumers(&model, "eth", &path).unwrap();
        assert_eq!(hidden, ["demo-nt"]);
    }

    #[test]
    fn expansion_errors_are_specific() {
        let model = template(TemplateId::Gpon, false);
        let err = expand_path(&model, "nope", &["demo-olt".to_string()]).unwrap_err();
        assert_eq!(err, ExpandError::UnknownLayer("nope".to_string()));

        let err = expand_path(&model, "media", &["ghost".to_string()]).unwrap_err();
        assert_eq!(err, ExpandError::UnknownElement("ghost".to_string()));

        let err = expand_path(&model, "media", &[]).unwrap_err();
        assert_eq!(err, ExpandError::EmptyPath);

        // olt and onu are not directly linked at media.
        let err = expand_path(
            &model,
            "media",
            &["demo-olt".to_string(), "demo-onu".to_string()],
        )
        .unwrap_err();
        assert_eq!(
            err,
            ExpandError::NotAPath {
                position: 0,
                a: "demo-olt".to_string(),
                b: "demo-onu".to_string()
            }
        );

        let ptp = template(TemplateId::PtpEthernet, false);
        let err = expand_path(
            &ptp,
            "eth",
            &["demo-sw".to_string(), "demo-nt".to_string()],
        )
        .unwrap_err();
        assert_eq!(
            err,
            ExpandError::NotPresentAtLayer {
                position: 1,
                element: "demo-nt".to_string(),
                layer: "eth".to_string()
            }
        );
        assert!(err.to_string().starts_with("E-NOT-A-PATH"));
    }

    #[test]
    fn the_trace_reports_capture_provenance() {
        let coverage = serial_recomposition(&template(TemplateId::Gpon, false));
        assert!(coverage
            .rp_trace
            .iter()
            .any(|line| line.contains("seg-access") && line.contains("rp-a")));
    }
}
