//! Shared test support: a seeded generator of line-topology models whose
//! capture, expansion, and energy answers have closed arithmetic forms, plus
//! an L3VPN fixture and a brute-force energy oracle.
//!
//! The generated shape is deliberately constrained so every expected value
//! can be computed by interval arithmetic, independent of the production
//! algorithms:
//!
//! - One transmission-media line `n00 - n01 - ... - n{N-1}` (layer `l0`).
//! - Up to three path layers `l1..l3`, each populated by an order-preserving
//!   subset of the layer below. Links join consecutive members; a link's
//!   server trail is the inclusive slice of the lower layer between its
//!   endpoints, so the full expansion of any path is simply the contiguous
//!   media run between its ends.
//! - Chain segments cut the media line at distinct positions with external
//!   RPI-N bounds. End intervals always have a segment; middle intervals may
//!   be omitted (their elements must come out uncaptured). No subsumed
//!   bounds, so capture has the exactly-once shape.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use metromodel_core::energy::{parse_timestamp, PowerProfile, PowerSample};
use metromodel_core::model::{
    build_model, Accessibility, FunctionalGroup, LayerKind, LayerNetwork, Link, Metadata, Model,
    ModelParts, NetworkElement, ReferencePoint, RpDesignator, RpKind, Segment, SegmentName, Site,
    SpaceClass,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

/// A generated line model together with the facts its oracles need.
pub struct LineModel {
    pub parts: ModelParts,
    pub model: Model,
    /// `layer_ids[j]` is the id of layer `j` (`l0` is transmission media).
    pub layer_ids: Vec<String>,
    /// `members[j]` lists the media positions present at layer `j`,
    /// ascending. `members[0]` is `0..n`.
    pub members: Vec<Vec<usize>>,
    /// Cut positions, ascending: a cut at `p` severs `n{p} - n{p+1}`.
    pub cuts: Vec<usize>,
    /// Segment id per interval between cuts (`cuts.len() + 1` entries);
    /// `None` for omitted middle intervals.
    pub interval_segments: Vec<Option<String>>,
    /// `powered[i]` for media position `i`.
    pub powered: Vec<bool>,
    /// Rated draw per media position (0 when unpowered).
    pub draw_w: Vec<f64>,
}

pub fn element_id(i: usize) -> String {
    format!("n{i:02}")
}

impl LineModel {
    pub fn element_count(&self) -> usize {
        self.powered.len()
    }

    /// The interval index an element position falls into.
    pub fn interval_of(&self, position: usize) -> usize {
        self.cuts.partition_point(|&cut| cut < position)
    }

    /// Closed-form capture: powered element -> segment id, plus the
    /// uncaptured set.
    pub fn expected_capture(&self) -> (BTreeMap<String, String>, BTreeSet<String>) {
        let mut assignment = BTreeMap::new();
        let mut uncaptured = BTreeSet::new();
        for i in 0..self.element_count() {
            if !self.powered[i] {
                continue;
            }
            match &self.interval_segments[self.interval_of(i)] {
                Some(segment) => {
                    assignment.insert(element_id(i), segment.clone());
                }
                None => {
                    uncaptured.insert(element_id(i));
                }
            }
        }
        (assignment, uncaptured)
    }

    /// Closed-form expansion of the path `members[j][a..=b]`: every media
    /// element between the two ends, inclusive.
    pub fn expected_expansion(&self, layer: usize, a: usize, b: usize) -> Vec<String> {
        let lo = self.members[layer][a];
        let hi = self.members[layer][b];
        (lo..=hi).map(element_id).collect()
    }

    /// Closed-form hidden consumers of a path covering media run
    /// `[lo, hi]`: powered elements in the run that the path does not name.
    pub fn expected_hidden(&self, path: &[String], lo: usize, hi: usize) -> Vec<String> {
        let named: BTreeSet<&String> = path.iter().collect();
        (lo..=hi)
            .map(element_id)
            .filter(|id| self.powered[id[1..].parse::<usize>().unwrap()] && !named.contains(id))
            .collect()
    }
}

/// Build a seeded random line model. Always builds cleanly and validates
/// without findings.
pub fn generate_line_model(seed: u64) -> LineModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=12usize);

    // Layers: media plus a chain of progressively thinner path layers.
    let extra_layers = rng.random_range(0..=3usize);
    let mut layer_ids = vec!["l0".to_string()];
    let mut members: Vec<Vec<usize>> = vec![(0..n).collect()];
    for j in 1..=extra_layers {
        let below = &members[j - 1];
        let size = rng.random_range(2..=below.len());
        let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, below.len(), size)
            .into_iter()
            .map(|k| below[k])
            .collect();
        picked.sort_unstable();
        members.push(picked);
        layer_ids.push(format!("l{j}"));
    }

    let layers: Vec<LayerNetwork> = layer_ids
        .iter()
        .enumerate()
        .map(|(j, id)| LayerNetwork {
            id: id.clone(),
            name: format!("layer {j}"),
            kind: if j == 0 { LayerKind::TransmissionMedia } else { LayerKind::Path },
            characteristic_info: String::new(),
            server_layers: if j == 0 { vec![] } else { vec![layer_ids[j - 1].clone()] },
        })
        .collect();

    let sites = vec![
        Site {
            id: "site-co".to_string(),
            name: "Central office".to_string(),
            location_label: "metro CO".to_string(),
            space_class: SpaceClass::CentralOffice,
            has_power: true,
            power_headroom_w: (rng.random_range(500.0_f64..5000.0)).round(),
            has_ethernet_uplink: true,
        },
        {
            let has_power = rng.random_bool(0.5);
            Site {
                id: "site-cab".to_string(),
                name: "Street cabinet".to_string(),
                location_label: "kerbside".to_string(),
                space_class: SpaceClass::Cabinet,
                has_power,
                power_headroom_w: if has_power { rng.random_range(100.0_f64..900.0).round() } else { 0.0 },
                has_ethernet_uplink: rng.random_bool(0.5),
            }
        },
        Site {
            id: "site-shed".to_string(),
            name: "Field shed".to_string(),
            location_label: "mid-span".to_string(),
            space_class: if rng.random_bool(0.5) { SpaceClass::StreetNode } else { SpaceClass::Pedestal },
            has_power: false,
            power_headroom_w: 0.0,
            has_ethernet_uplink: false,
        },
    ];
    let site_ids = ["site-co", "site-cab", "site-shed"];

    let mut powered = Vec::with_capacity(n);
    let mut draw_w = Vec::with_capacity(n);
    let mut elements = Vec::with_capacity(n);
    for i in 0..n {
        let is_powered = rng.random_bool(0.7);
        let draw = if is_powered { (rng.random_range(5.0_f64..300.0) * 10.0).round() / 10.0 } else { 0.0 };
        powered.push(is_powered);
        draw_w.push(draw);

        let present: Vec<String> = members
            .iter()
            .enumerate()
            .filter(|(_, set)| set.contains(&i))
            .map(|(j, _)| layer_ids[j].clone())
            .collect();
        // Transparent exactly where the element rides inside a trail: it is
        // in the layer below, skipped by this layer, and strictly inside the
        // layer's span.
        let transparent: Vec<String> = (1..members.len())
            .filter(|&j| {
                members[j - 1].contains(&i)
                    && !members[j].contains(&i)
                    && members[j].first().is_some_and(|&lo| lo < i)
                    && members[j].last().is_some_and(|&hi| i < hi)
            })
            .map(|j| layer_ids[j].clone())
            .collect();

        elements.push(NetworkElement {
            id: element_id(i),
            name: format!("Element {i}"),
            site_id: site_ids[rng.random_range(0..site_ids.len())].to_string(),
            operator_id: if rng.random_bool(0.5) { "op-a" } else { "op-b" }.to_string(),
            functional_groups: vec![FunctionalGroup::Other],
            powered: is_powered,
            power_draw_w: draw,
            present_at_layers: present,
            transparent_at_layers: transparent,
        });
    }

    let mut links = Vec::new();
    for i in 0..n - 1 {
        links.push(Link {
            id: format!("m{i:02}"),
            layer_id: "l0".to_string(),
            endpoint_a: element_id(i),
            endpoint_b: element_id(i + 1),
            server_trail: vec![],
        });
    }
    for j in 1..members.len() {
        for (t, pair) in members[j].windows(2).enumerate() {
            let trail: Vec<String> = members[j - 1]
                .iter()
                .filter(|&&i| pair[0] <= i && i <= pair[1])
                .map(|&i| element_id(i))
                .collect();
            links.push(Link {
                id: format!("p{j}-{t:02}"),
                layer_id: layer_ids[j].clone(),
                endpoint_a: element_id(pair[0]),
                endpoint_b: element_id(pair[1]),
                server_trail: trail,
            });
        }
    }

    // Cuts on the media line. Two or more, so the two end segments never
    // share a bound set (a single shared cut would be genuinely ambiguous).
    let cut_count = rng.random_range(2..=4.min(n - 1));
    let mut cuts: Vec<usize> = rand::seq::index::sample(&mut rng, n - 1, cut_count).into_vec();
    cuts.sort_unstable();

    let reference_points: Vec<ReferencePoint> = cuts
        .iter()
        .enumerate()
        .map(|(t, &p)| ReferencePoint {
            id: format!("rp{t}"),
            designator: RpDesignator::from_token(&format!("X{t}")),
            kind: RpKind::RpiN,
            layer_id: "l0".to_string(),
            upstream_element: element_id(p),
            downstream_element: element_id(p + 1),
            accessibility: Accessibility::External,
            subsuming_element: None,
        })
        .collect();

    let mut segments = Vec::new();
    let mut interval_segments: Vec<Option<String>> = Vec::new();
    for t in 0..=cuts.len() {
        let is_end = t == 0 || t == cuts.len();
        if !is_end && !rng.random_bool(0.75) {
            interval_segments.push(None);
            continue;
        }
        let mut bounds = BTreeSet::new();
        if t > 0 {
            bounds.insert(format!("rp{}", t - 1));
        }
        if t < cuts.len() {
            bounds.insert(format!("rp{t}"));
        }
        let id = format!("seg{t}");
        segments.push(Segment {
            id: id.clone(),
            name: SegmentName::from_token(&format!("zone-{t}")),
            operator_id: if rng.random_bool(0.5) { "op-a" } else { "op-b" }.to_string(),
            bounding_rp_ids: bounds,
        });
        interval_segments.push(Some(id));
    }

    let parts = ModelParts {
        metadata: Metadata {
            name: format!("generated line model {seed}"),
            author: "generator".to_string(),
            date: "2026-08-14".to_string(),
            notes: vec![],
        },
        layers,
        sites,
        elements,
        links,
        reference_points,
        segments,
    };
    let model = build_model(parts.clone()).expect("generated models must build cleanly");

    LineModel {
        parts,
        model,
        layer_ids,
        members,
        cuts,
        interval_segments,
        powered,
        draw_w,
    }
}

/// The same parts with every collection order shuffled (seeded).
pub fn shuffled_parts(parts: &ModelParts, seed: u64) -> ModelParts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = parts.clone();
    out.layers.shuffle(&mut rng);
    out.sites.shuffle(&mut rng);
    out.elements.shuffle(&mut rng);
    out.links.shuffle(&mut rng);
    out.reference_points.shuffle(&mut rng);
    out.segments.shuffle(&mut rng);
    out
}

// ---------------------------------------------------------------------------
// Energy: generated profiles and a one-second Riemann oracle
// ---------------------------------------------------------------------------

pub fn rfc3339(t: i64) -> String {
    OffsetDateTime::from_unix_timestamp(t)
        .expect("in-range timestamp")
        .format(&Rfc3339)
        .expect("UTC formats cleanly")
}

/// A generated measurement set over a request window, whole seconds only.
pub struct GeneratedProfiles {
    pub profiles: Vec<PowerProfile>,
    pub csv: String,
    pub from: i64,
    pub to: i64,
    pub from_utc: String,
    pub to_utc: String,
}

/// Random profiles for up to three distinct elements of `model`, plus a
/// request window that overlaps them partially.
pub fn generate_profiles(model: &Model, seed: u64) -> GeneratedProfiles {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let base = parse_timestamp("2026-03-01T00:00:00Z").unwrap();

    let ids: Vec<&str> = model.elements().map(|e| e.id.as_str()).collect();
    let count = rng.random_range(1..=3.min(ids.len()));
    let chosen: Vec<&str> = rand::seq::index::sample(&mut rng, ids.len(), count)
        .into_iter()
        .map(|k| ids[k])
        .collect();

    let mut csv = String::from("element_id,start_utc,end_utc,avg_power_w\n");
    let mut profiles = Vec::new();
    for id in chosen {
        let mut cursor = base + rng.random_range(0..1800);
        let mut samples = Vec::new();
        for _ in 0..rng.random_range(1..=4usize) {
            let duration = rng.random_range(60..=2700);
            let power = (rng.random_range(0.0_f64..400.0) * 10.0).round() / 10.0;
            let (start, end) = (cursor, cursor + duration);
            csv.push_str(&format!("{id},{},{},{power}\n", rfc3339(start), rfc3339(end)));
            samples.push(PowerSample {
                start_utc: rfc3339(start),
                end_utc: rfc3339(end),
                avg_power_w: power,
                start,
                end,
            });
            cursor = end + rng.random_range(0..=900);
        }
        profiles.push(PowerProfile::new(id.to_string(), id.to_string(), samples).unwrap());
    }

    let from = base + rng.random_range(0..3600);
    let to = from + rng.random_range(600..=7200);
    GeneratedProfiles {
        profiles,
        csv,
        from,
        to,
        from_utc: rfc3339(from),
        to_utc: rfc3339(to),
    }
}

/// Brute-force watt-hours: walk the window one second at a time.
pub fn riemann_wh(profile: &PowerProfile, from: i64, to: i64) -> f64 {
    let mut wh = 0.0;
    for second in from..to {
        for sample in &profile.samples {
            if sample.start <= second && second < sample.end {
                wh += sample.avg_power_w / 3600.0;
                break;
            }
        }
    }
    wh
}

/// Expected total watt-hours for the model over the window: Riemann sums for
/// measured powered elements, rated draw for unmeasured powered ones.
pub fn oracle_total_wh(model: &Model, profiles: &[PowerProfile], from: i64, to: i64) -> f64 {
    let measured: BTreeMap<&str, &PowerProfile> =
        profiles.iter().map(|p| (p.element_id.as_str(), p)).collect();
    let hours = (to - from) as f64 / 3600.0;
    model
        .elements()
        .filter(|e| e.powered)
        .map(|e| match measured.get(e.id.as_str()) {
            Some(profile) => riemann_wh(profile, from, to),
            None => e.power_draw_w * hours,
        })
        .sum()
}

/// Expected per-segment split of the total (same arithmetic as
/// [`oracle_total_wh`], routed through [`LineModel::expected_capture`]), plus
/// the expected uncaptured remainder.
pub fn oracle_segment_wh(
    line: &LineModel,
    profiles: &[PowerProfile],
    from: i64,
    to: i64,
) -> (BTreeMap<String, f64>, f64) {
    let measured: BTreeMap<&str, &PowerProfile> =
        profiles.iter().map(|p| (p.element_id.as_str(), p)).collect();
    let hours = (to - from) as f64 / 3600.0;
    let mut per_segment: BTreeMap<String, f64> = line
        .model
        .segments()
        .map(|s| (s.id.clone(), 0.0))
        .collect();
    let mut uncaptured = 0.0;
    for i in 0..line.element_count() {
        if !line.powered[i] {
            continue;
        }
        let id = element_id(i);
        let wh = match measured.get(id.as_str()) {
            Some(profile) => riemann_wh(profile, from, to),
            None => line.draw_w[i] * hours,
        };
        match &line.interval_segments[line.interval_of(i)] {
            Some(segment) => *per_segment.get_mut(segment).unwrap() += wh,
            None => uncaptured += wh,
        }
    }
    (per_segment, uncaptured)
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// An L3VPN service over an MPLS metro core: PE routers terminate the VPN
/// layer, the P routers P1 and P2 forward it transparently.
pub fn l3vpn_model() -> Model {
    let pe = |id: &str, site: &str| NetworkElement {
        id: id.to_string(),
        name: format!("Provider-edge router {id}"),
        site_id: site.to_string(),
        operator_id: "op-metro".to_string(),
        functional_groups: vec![FunctionalGroup::PeRouter],
        powered: true,
        power_draw_w: 450.0,
        present_at_layers: vec!["fibre".into(), "mpls".into(), "vpn".into()],
        transparent_at_layers: vec![],
    };
    let p = |id: &str, site: &str| NetworkElement {
        id: id.to_string(),
        name: format!("Core router {id}"),
        site_id: site.to_string(),
        operator_id: "op-metro".to_string(),
        functional_groups: vec![FunctionalGroup::PRouter],
        powered: true,
        power_draw_w: 380.0,
        present_at_layers: vec!["fibre".into(), "mpls".into()],
        transparent_at_layers: vec!["vpn".into()],
    };
    let media_link = |id: &str, a: &str, b: &str| Link {
        id: id.to_string(),
        layer_id: "fibre".to_string(),
        endpoint_a: a.to_string(),
        endpoint_b: b.to_string(),
        server_trail: vec![],
    };
    let mpls_link = |id: &str, a: &str, b: &str| Link {
        id: id.to_string(),
        layer_id: "mpls".to_string(),
        endpoint_a: a.to_string(),
        endpoint_b: b.to_string(),
        server_trail: vec![a.to_string(), b.to_string()],
    };
    let site = |id: &str, name: &str, class: SpaceClass| Site {
        id: id.to_string(),
        name: name.to_string(),
        location_label: name.to_string(),
        space_class: class,
        has_power: true,
        power_headroom_w: 2000.0,
        has_ethernet_uplink: true,
    };

    let parts = ModelParts {
        metadata: Metadata {
            name: "L3VPN over an MPLS metro core".to_string(),
            author: "fixtures".to_string(),
            date: "2026-08-14".to_string(),
            notes: vec!["anchors: IETF RFC 4364; ITU-T G.805".to_string()],
        },
        layers: vec![
            LayerNetwork {
                id: "fibre".to_string(),
                name: "Fibre".to_string(),
                kind: LayerKind::TransmissionMedia,
                characteristic_info: "optical spectrum".to_string(),
                server_layers: vec![],
            },
            LayerNetwork {
                id: "mpls".to_string(),
                name: "MPLS".to_string(),
                kind: LayerKind::Path,
                characteristic_info: "label-switched paths".to_string(),
                server_layers: vec!["fibre".to_string()],
            },
            LayerNetwork {
                id: "vpn".to_string(),
                name: "L3VPN".to_string(),
                kind: LayerKind::Path,
                characteristic_info: "VPN-IPv4 routes".to_string(),
                server_layers: vec!["mpls".to_string()],
            },
        ],
        sites: vec![
            site("pop-a", "PoP A", SpaceClass::CentralOffice),
            site("core-hut", "Core hut", SpaceClass::Vault),
            site("pop-b", "PoP B", SpaceClass::CentralOffice),
        ],
        elements: vec![
            pe("pe1", "pop-a"),
            p("p1", "core-hut"),
            p("p2", "core-hut"),
            pe("pe2", "pop-b"),
        ],
        links: vec![
            media_link("f1", "pe1", "p1"),
            media_link("f2", "p1", "p2"),
            media_link("f3", "p2", "pe2"),
            mpls_link("mp1", "pe1", "p1"),
            mpls_link("mp2", "p1", "p2"),
            mpls_link("mp3", "p2", "pe2"),
            Link {
                id: "vp1".to_string(),
                layer_id: "vpn".to_string(),
                endpoint_a: "pe1".to_string(),
                endpoint_b: "pe2".to_string(),
                server_trail: vec!["pe1".into(), "p1".into(), "p2".into(), "pe2".into()],
            },
        ],
        reference_points: vec![],
        segments: vec![],
    };
    build_model(parts).expect("the L3VPN fixture builds cleanly")
}
