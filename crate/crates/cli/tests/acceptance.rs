//! Acceptance gate: eight scripted checks, one per headline capability.
//!
//! Each test prints a single `criterion N: PASS — …` line once its assertions
//! hold (run with `cargo test --test acceptance -- --nocapture` to read the
//! checklist). Expected values come from closed-form oracles in
//! `common`, from hand-built fixtures, or from brute-force numeric
//! integration — never from the code under test.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;

use assert_cmd::Command;
use common::{
    element_id, generate_line_model, generate_profiles, l3vpn_model, oracle_segment_wh,
    oracle_total_wh,
};
use metromodel_core::catalog::{instantiate, TemplateId, TemplateParams};
use metromodel_core::energy::{attribute_energy, SplitPolicy};
use metromodel_core::mec::{evaluate_candidacy, Classification, Criterion, MecDemand, Upgrade};
use metromodel_core::model::{
    build_model, Accessibility, FunctionalGroup, LayerKind, LayerNetwork, Metadata, Model,
    ModelParts, NetworkElement, ReferencePoint, RpDesignator, RpKind, Site, SpaceClass,
};
use metromodel_core::recompose::{detect_hidden_consumers, expand_path, serial_recomposition};
use metromodel_core::schema::{parse_model, serialize_model};
use metromodel_core::validate::{subsumption_report, validate_reference_configuration, Severity};

#[test]
fn criterion_1_path_expansion_follows_server_trails() {
    let mut checked = 0usize;
    for seed in 0..1000u64 {
        let line = generate_line_model(seed);
        for j in 1..line.members.len() {
            let last = line.members[j].len() - 1;
            let path: Vec<String> =
                line.members[j].iter().map(|&i| element_id(i)).collect();
            let trace = expand_path(&line.model, &line.layer_ids[j], &path)
                .unwrap_or_else(|e| panic!("seed {seed} layer {j}: {e}"));
            assert_eq!(trace.layer_id, "l0", "seed {seed} layer {j}");
            let got: Vec<String> = trace.elements.iter().map(|t| t.id.clone()).collect();
            assert_eq!(got, line.expected_expansion(j, 0, last), "seed {seed} layer {j}");
            let named: BTreeSet<&String> = path.iter().collect();
            for t in &trace.elements {
                assert_eq!(
                    t.visible_at_request_layer,
                    named.contains(&t.id),
                    "seed {seed} layer {j}: visibility of {}",
                    t.id
                );
            }
            let hidden =
                detect_hidden_consumers(&line.model, &line.layer_ids[j], &path).unwrap();
            assert_eq!(
                hidden,
                line.expected_hidden(&path, line.members[j][0], line.members[j][last]),
                "seed {seed} layer {j}"
            );
            checked += 1;
        }
    }
    assert!(checked > 1000, "too few layered models generated ({checked})");
    println!(
        "criterion 1: PASS — expansion and hidden consumers match the closed-form oracle on \
         {checked} layer paths across 1000 seeded models"
    );
}

#[test]
fn criterion_2_vpn_endpoints_reveal_the_transit_routers() {
    let model = l3vpn_model();
    let path = vec!["pe1".to_string(), "pe2".to_string()];
    let trace = expand_path(&model, "vpn", &path).unwrap();
    assert_eq!(trace.layer_id, "fibre");
    let ids: Vec<&str> = trace.elements.iter().map(|t| t.id.as_str()).collect();
    assert_eq!(ids, ["pe1", "p1", "p2", "pe2"]);
    let visible: Vec<bool> = trace
        .elements
        .iter()
        .map(|t| t.visible_at_request_layer)
        .collect();
    assert_eq!(visible, [true, false, false, true]);
    let hidden = detect_hidden_consumers(&model, "vpn", &path).unwrap();
    assert_eq!(hidden, ["p1", "p2"]);
    println!(
        "criterion 2: PASS — pe1..pe2 at the VPN layer expands to pe1,p1,p2,pe2 on fibre and \
         reports p1,p2 as hidden consumers"
    );
}

#[test]
fn criterion_3_recomposition_captures_each_powered_element_exactly_once() {
    for seed in 0..1000u64 {
        let line = generate_line_model(seed);
        let coverage = serial_recomposition(&line.model);
        assert!(coverage.straddlers.is_empty(), "seed {seed}");
        assert!(coverage.warnings.is_empty(), "seed {seed}: {:?}", coverage.warnings);

        let (expected_assignment, expected_uncaptured) = line.expected_capture();
        assert_eq!(coverage.assignment, expected_assignment, "seed {seed}");
        let uncaptured: BTreeSet<String> = coverage.uncaptured.iter().cloned().collect();
        assert_eq!(uncaptured.len(), coverage.uncaptured.len(), "seed {seed}");
        assert_eq!(uncaptured, expected_uncaptured, "seed {seed}");

        let mut seen = BTreeSet::new();
        for id in coverage
            .assignment
            .keys()
            .chain(coverage.straddlers.keys())
            .chain(coverage.uncaptured.iter())
        {
            assert!(seen.insert(id.clone()), "seed {seed}: {id} covered twice");
        }
        let powered: BTreeSet<String> = line
            .model
            .elements()
            .filter(|e| e.powered)
            .map(|e| e.id.clone())
            .collect();
        assert_eq!(seen, powered, "seed {seed}");
    }
    println!(
        "criterion 3: PASS — assignment, straddlers, and uncaptured partition the powered \
         elements of all 1000 seeded models, matching the interval oracle"
    );
}

#[test]
fn criterion_4_energy_attribution_conserves_measured_energy() {
    let mut worst = 0.0f64;
    for seed in 0..500u64 {
        let line = generate_line_model(seed);
        let gen = generate_profiles(&line.model, seed);
        let coverage = serial_recomposition(&line.model);
        let report = attribute_energy(
            &line.model,
            &coverage,
            &gen.profiles,
            &gen.from_utc,
            &gen.to_utc,
            &SplitPolicy::Deny,
        )
        .unwrap();

        let expected_total = oracle_total_wh(&line.model, &gen.profiles, gen.from, gen.to);
        let rel = (report.total_wh - expected_total).abs() / expected_total.abs().max(1.0);
        assert!(
            rel <= 1e-6,
            "seed {seed}: total {} vs Riemann oracle {expected_total}",
            report.total_wh
        );
        worst = worst.max(rel);

        let (expected_segments, expected_uncaptured) =
            oracle_segment_wh(&line, &gen.profiles, gen.from, gen.to);
        for (segment, wh) in &report.per_segment_wh {
            let want = expected_segments[segment];
            assert!(
                (wh - want).abs() <= 1e-6 * want.abs().max(1.0),
                "seed {seed} {segment}: {wh} vs {want}"
            );
        }
        assert!(
            (report.uncaptured_wh - expected_uncaptured).abs()
                <= 1e-6 * expected_uncaptured.abs().max(1.0),
            "seed {seed}: uncaptured {} vs {expected_uncaptured}",
            report.uncaptured_wh
        );

        let scale = report.total_wh.abs().max(1.0);
        let segment_sum: f64 = report.per_segment_wh.values().sum();
        let operator_sum: f64 = report.per_operator_wh.values().sum();
        assert!(
            (segment_sum + report.uncaptured_wh - report.total_wh).abs() <= 1e-9 * scale,
            "seed {seed}: segment breakdown does not add up"
        );
        assert!(
            (operator_sum + report.uncaptured_wh - report.total_wh).abs() <= 1e-9 * scale,
            "seed {seed}: operator breakdown does not add up"
        );
    }
    println!(
        "criterion 4: PASS — 500 measurement sets conserve energy both ways (≤1e-9 rel) and \
         match the per-second Riemann oracle (worst total error {worst:.2e} rel)"
    );
}

#[test]
fn criterion_5_every_template_builds_and_validates_clean() {
    for id in TemplateId::ALL {
        for integrated in [false, true] {
            let params = TemplateParams {
                integrated_cpe: integrated,
                ..TemplateParams::default()
            };
            let model = build_model(instantiate(id, &params)).unwrap_or_else(|v| {
                panic!("{} (integrated={integrated}) violates build invariants: {v:?}", id.as_str())
            });
            let diagnostics = validate_reference_configuration(&model);
            assert!(
                diagnostics.is_empty(),
                "{} (integrated={integrated}): {diagnostics:?}",
                id.as_str()
            );
        }
    }

    // Structure spot checks. HFC: the five-amplifier cascade plus the optical
    // node are the powered outside-plant actives.
    let hfc = build_model(instantiate(TemplateId::HfcDocsis, &TemplateParams::default())).unwrap();
    let amps = hfc
        .elements()
        .filter(|e| e.id.starts_with("demo-coax-amp-") && e.powered)
        .count();
    assert_eq!(amps, 5);
    assert!(hfc.element("demo-optical-node").unwrap().powered);

    // GPON: the integrated variant absorbs U into the combined CPE instead of
    // exposing an ephemeral A point.
    let split = build_model(instantiate(TemplateId::Gpon, &TemplateParams::default())).unwrap();
    let a = split.reference_point("rp-a").unwrap();
    assert_eq!(a.designator, RpDesignator::AEphemeral);
    assert_eq!(a.kind, RpKind::RpiN);
    let merged = build_model(instantiate(
        TemplateId::Gpon,
        &TemplateParams { integrated_cpe: true, ..TemplateParams::default() },
    ))
    .unwrap();
    assert!(merged
        .reference_points()
        .all(|rp| rp.designator != RpDesignator::AEphemeral));
    let u = merged.reference_point("rp-u").unwrap();
    assert_eq!(u.subsuming_element.as_deref(), Some("demo-onurg"));
    let absorbed = subsumption_report(&merged);
    assert_eq!(absorbed.len(), 1);
    assert_eq!(absorbed[0].rp_id, "rp-u");

    println!(
        "criterion 5: PASS — all 12 templates build and validate clean in both CPE variants; \
         HFC carries its five-amplifier cascade and integrated GPON subsumes U"
    );
}

#[test]
fn criterion_6_each_placement_rule_fires_on_a_one_edit_mutation() {
    fn mutated(
        id: TemplateId,
        integrated: bool,
        mutate: impl FnOnce(&mut ModelParts),
    ) -> Model {
        let params = TemplateParams { integrated_cpe: integrated, ..TemplateParams::default() };
        let mut parts = instantiate(id, &params);
        mutate(&mut parts);
        build_model(parts).expect("mutated template must still build")
    }
    fn swap_rp(parts: &mut ModelParts, id: &str) {
        let rp = parts.reference_points.iter_mut().find(|rp| rp.id == id).unwrap();
        std::mem::swap(&mut rp.upstream_element, &mut rp.downstream_element);
    }

    let cases: Vec<(&str, Model)> = vec![
        ("R1", mutated(TemplateId::Gpon, false, |p| swap_rp(p, "rp-s"))),
        ("R2", mutated(TemplateId::Gpon, false, |p| swap_rp(p, "rp-t"))),
        ("R3", mutated(TemplateId::Gpon, false, |p| swap_rp(p, "rp-u"))),
        ("R4", mutated(TemplateId::Gpon, false, |p| {
            p.reference_points.retain(|rp| rp.id != "rp-pai");
        })),
        ("R5", mutated(TemplateId::Gpon, true, |p| {
            p.elements
                .iter_mut()
                .find(|e| e.id == "demo-onurg")
                .unwrap()
                .functional_groups
                .retain(|g| *g != FunctionalGroup::Rg);
        })),
        ("R6", mutated(TemplateId::Xdsl, true, |p| {
            let mut u1 = p
                .reference_points
                .iter()
                .find(|rp| rp.id == "rp-t")
                .unwrap()
                .clone();
            u1.id = "rp-u1".to_string();
            u1.designator = RpDesignator::U1;
            p.reference_points.push(u1);
        })),
        ("R7", mutated(TemplateId::Gpon, false, |p| {
            p.elements
                .iter_mut()
                .find(|e| e.id == "demo-onu")
                .unwrap()
                .functional_groups
                .push(FunctionalGroup::Af);
        })),
        ("R8", mutated(TemplateId::Gpon, false, |p| {
            p.reference_points.iter_mut().find(|rp| rp.id == "rp-a").unwrap().kind =
                RpKind::RpiS;
        })),
        ("R9", mutated(TemplateId::Gpon, false, |p| {
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
        })),
        ("R10", mutated(TemplateId::Gpon, false, |p| {
            let rp = p.reference_points.iter_mut().find(|rp| rp.id == "rp-t").unwrap();
            rp.upstream_element = "demo-rg".to_string();
            rp.downstream_element = "demo-te".to_string();
        })),
    ];

    for (rule, model) in &cases {
        let diagnostics = validate_reference_configuration(model);
        let codes: Vec<&str> = diagnostics.iter().map(|d| d.code.as_str()).collect();
        assert_eq!(&codes, &[*rule], "expected exactly one {rule} finding");
        let d = &diagnostics[0];
        assert!(!d.subjects.is_empty(), "{rule} names no subjects");
        assert!(!d.anchor.is_empty(), "{rule} cites no standard");
        if *rule == "R4" || *rule == "R9" || *rule == "R10" {
            assert_eq!(d.severity, Severity::Warning, "{rule} must be advisory");
        } else {
            assert_eq!(d.severity, Severity::Error, "{rule} must be an error");
        }
    }
    println!(
        "criterion 6: PASS — R1–R10 each fire exactly once on a one-edit mutation of a clean \
         template, with subjects and standards anchors attached"
    );
}

#[test]
fn criterion_7_mec_candidacy_separates_passive_and_active_sites() {
    // Case A: an unpowered street cabinet holding only an optical mux/demux.
    let passive = build_model(ModelParts {
        metadata: Metadata {
            name: "passive wavelength cabinet".to_string(),
            author: "acceptance fixture".to_string(),
            date: "2026-08-14".to_string(),
            notes: vec![],
        },
        layers: vec![LayerNetwork {
            id: "media".to_string(),
            name: "Fibre".to_string(),
            kind: LayerKind::TransmissionMedia,
            characteristic_info: "DWDM optical spectrum".to_string(),
            server_layers: vec![],
        }],
        sites: vec![Site {
            id: "cab-1".to_string(),
            name: "Street cabinet".to_string(),
            location_label: "kerbside".to_string(),
            space_class: SpaceClass::Cabinet,
            has_power: false,
            power_headroom_w: 0.0,
            has_ethernet_uplink: false,
        }],
        elements: vec![NetworkElement {
            id: "omod-1".to_string(),
            name: "Optical mux/demux".to_string(),
            site_id: "cab-1".to_string(),
            operator_id: "op-metro".to_string(),
            functional_groups: vec![FunctionalGroup::OmOd],
            powered: false,
            power_draw_w: 0.0,
            present_at_layers: vec!["media".to_string()],
            transparent_at_layers: vec![],
        }],
        links: vec![],
        reference_points: vec![],
        segments: vec![],
    })
    .expect("fixture builds");
    let demand = MecDemand {
        required_power_w: 40.0,
        required_space_class: Some(SpaceClass::Pedestal),
        requires_ethernet: true,
    };
    let report = evaluate_candidacy(&passive, "cab-1", &demand).unwrap();
    assert_eq!(report.classification, Classification::CaseAPassive);
    assert!(!report.eligible);
    let verdicts: Vec<(Criterion, bool)> =
        report.criteria.iter().map(|c| (c.criterion, c.passed)).collect();
    assert_eq!(
        verdicts,
        [(Criterion::Space, true), (Criterion::Power, false), (Criterion::Network, false)]
    );
    assert_eq!(report.upgrades, [Upgrade::ProvidePower, Upgrade::InstallEthernetUplink]);

    // Case B: the FTTN street cabinet feeds a powered MSAN and has an uplink.
    let fttn = build_model(instantiate(TemplateId::Fttn, &TemplateParams::default())).unwrap();
    let fits = MecDemand {
        required_power_w: 500.0,
        required_space_class: Some(SpaceClass::Cabinet),
        requires_ethernet: true,
    };
    let ok = evaluate_candidacy(&fttn, "demo-cab", &fits).unwrap();
    assert_eq!(ok.classification, Classification::CaseBActive);
    assert!(ok.eligible);
    assert!(ok.upgrades.is_empty());
    assert!((ok.residual_power_w - 300.0).abs() < 1e-9);

    let short = evaluate_candidacy(
        &fttn,
        "demo-cab",
        &MecDemand { required_power_w: 900.0, ..fits.clone() },
    )
    .unwrap();
    assert!(!short.eligible);
    assert_eq!(short.upgrades, [Upgrade::ProvidePower]);
    assert!((short.residual_power_w - (-100.0)).abs() < 1e-9);

    println!(
        "criterion 7: PASS — a passive OM/OD cabinet fails power and network with the two \
         matching upgrades; the FTTN MSAN cabinet hosts 500 W but not 900 W"
    );
}

#[test]
fn criterion_8_round_trips_are_identities_and_cli_output_is_byte_stable() {
    fn assert_round_trip(model: &Model) {
        let text = serialize_model(model);
        let doc = parse_model(&text).expect("serialized model parses");
        assert_eq!(doc.schema_version, "1");
        let rebuilt = build_model(doc.parts).expect("parsed model rebuilds");
        assert_eq!(&rebuilt, model);
        assert_eq!(serialize_model(&rebuilt), text);
    }

    let mut round_trips = 0usize;
    for id in TemplateId::ALL {
        for integrated in [false, true] {
            let params = TemplateParams { integrated_cpe: integrated, ..TemplateParams::default() };
            assert_round_trip(&build_model(instantiate(id, &params)).unwrap());
            round_trips += 1;
        }
    }
    for seed in 0..50u64 {
        assert_round_trip(&generate_line_model(seed).model);
        round_trips += 1;
    }

    // CLI determinism: every command, run twice with identical inputs, must
    // produce identical bytes on stdout.
    let dir = tempfile::tempdir().unwrap();
    let gpon_path = dir.path().join("gpon.json");
    let gpon = build_model(instantiate(TemplateId::Gpon, &TemplateParams::default())).unwrap();
    std::fs::write(&gpon_path, serialize_model(&gpon)).unwrap();

    let line = generate_line_model(42);
    let line_path = dir.path().join("line.json");
    std::fs::write(&line_path, serialize_model(&line.model)).unwrap();
    let top = line.members.len() - 1;
    let top_layer = line.layer_ids[top].clone();
    let top_path: Vec<String> = line.members[top].iter().map(|&i| element_id(i)).collect();

    let csv_path = dir.path().join("power.csv");
    std::fs::write(
        &csv_path,
        "element_id,start_utc,end_utc,avg_power_w\n\
         demo-olt,2026-03-01T00:00:00Z,2026-03-01T01:00:00Z,120.0\n\
         demo-onu,2026-03-01T00:00:00Z,2026-03-01T00:30:00Z,12.5\n",
    )
    .unwrap();

    let gpon_arg = gpon_path.to_str().unwrap();
    let line_arg = line_path.to_str().unwrap();
    let csv_arg = csv_path.to_str().unwrap();
    let joined = top_path.join(",");
    let cases: Vec<Vec<&str>> = vec![
        vec!["catalog", "list"],
        vec!["catalog", "list", "--format", "json"],
        vec!["catalog", "new", "GPON", "--integrated-cpe"],
        vec!["validate", gpon_arg],
        vec!["validate", gpon_arg, "--format", "json"],
        vec!["recompose", gpon_arg],
        vec!["recompose", gpon_arg, "--format", "json"],
        vec!["mec", gpon_arg, "--power-w", "200"],
        vec!["mec", gpon_arg, "--power-w", "200", "--format", "json"],
        vec!["expand", line_arg, "--layer", &top_layer, "--path", &joined],
        vec!["expand", line_arg, "--layer", &top_layer, "--path", &joined, "--format", "json"],
        vec![
            "attribute", gpon_arg, "--power", csv_arg,
            "--from", "2026-03-01T00:00:00Z", "--to", "2026-03-01T01:00:00Z",
        ],
        vec![
            "attribute", gpon_arg, "--power", csv_arg,
            "--from", "2026-03-01T00:00:00Z", "--to", "2026-03-01T01:00:00Z",
            "--format", "json",
        ],
        vec![
            "attribute", gpon_arg, "--power", csv_arg,
            "--from", "2026-03-01T00:00:00Z", "--to", "2026-03-01T01:00:00Z",
            "--format", "csv",
        ],
    ];
    for args in &cases {
        let first = Command::cargo_bin("metromodel").unwrap().args(args).output().unwrap();
        assert!(
            first.status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&first.stderr)
        );
        assert!(!first.stdout.is_empty(), "{args:?} printed nothing");
        let second = Command::cargo_bin("metromodel").unwrap().args(args).output().unwrap();
        assert_eq!(
            first.stdout, second.stdout,
            "stdout changed between identical runs of {args:?}"
        );
    }

    println!(
        "criterion 8: PASS — {round_trips} serialize→parse→build round trips are identities and \
         {} CLI invocations are byte-stable across repeated runs",
        cases.len()
    );
}
