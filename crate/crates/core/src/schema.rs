//! Document I/O: parsing and canonical serialization of `.metromodel.json`.
//!
//! Parsing is shape-only (presence, types, enum tokens, closed key sets) and
//! reports *every* problem it finds with a document path, e.g.
//! `elements[3].power_draw_w`. Semantic checks (duplicate ids, dangling
//! references, layer invariants) belong to `build_model`; the two error-code
//! sets are disjoint by construction.
//!
//! Serialization is canonical: fixed key order, collections sorted by id,
//! UTF-8, pretty-printed, newline-terminated. Two equal models serialize to
//! identical bytes.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::model::{
    Accessibility, FunctionalGroup, LayerKind, LayerNetwork, Link, Metadata, Model, ModelParts,
    NetworkElement, ReferencePoint, RpDesignator, RpKind, Segment, SegmentName, Site, SpaceClass,
};

/// Canonical file extension for model documents.
pub const FILE_EXTENSION: &str = ".metromodel.json";

/// The only schema version this crate reads and writes.
pub const SCHEMA_VERSION: &str = "1";

/// Machine codes for parse-level (shape) errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParseErrorCode {
    Syntax,
    MissingField,
    UnknownKey,
    WrongType,
    BadVersion,
}

impl ParseErrorCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParseErrorCode::Syntax => "E-SYNTAX",
            ParseErrorCode::MissingField => "E-MISSING-FIELD",
            ParseErrorCode::UnknownKey => "E-UNKNOWN-KEY",
            ParseErrorCode::WrongType => "E-WRONG-TYPE",
            ParseErrorCode::BadVersion => "E-BAD-VERSION",
        }
    }
}

impl Serialize for ParseErrorCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One shape error, carrying the document path it was found at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParseError {
    pub code: ParseErrorCode,
    /// Document path (`elements[3].power_draw_w`); empty for whole-document
    /// syntax errors.
    pub path: String,
    pub message: String,
    /// Line/column for `E-SYNTAX` only.
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{} — {}", self.code.as_str(), self.message)
        } else {
            write!(f, "{} {} — {}", self.code.as_str(), self.path, self.message)
        }
    }
}

/// A parsed (but not yet semantically validated) model document.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDocument {
    pub schema_version: String,
    pub parts: ModelParts,
}

struct Dec {
    errors: Vec<ParseError>,
}

impl Dec {
    fn err(&mut self, code: ParseErrorCode, path: &str, message: String) {
        self.errors.push(ParseError {
            code,
            path: path.to_string(),
            message,
            line: None,
            column: None,
        });
    }

    fn obj<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            Some(m) => Some(m),
            None => {
                self.err(ParseErrorCode::WrongType, path, "expected an object".into());
                None
            }
        }
    }

    fn keys(&mut self, m: &Map<String, Value>, path: &str, allowed: &[&str]) {
        for k in m.keys() {
            if !allowed.contains(&k.as_str()) {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                self.err(ParseErrorCode::UnknownKey, &p, format!("unknown key {k}"));
            }
        }
    }

    fn field<'a>(
        &mut self,
        m: &'a Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'a Value> {
        match m.get(key) {
            Some(v) => Some(v),
            None => {
                let p = if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
                self.err(ParseErrorCode::MissingField, &p, format!("missing field {key}"));
                None
            }
        }
    }

    fn str_field(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<String> {
        let v = self.field(m, path, key)?;
        match v.as_str() {
            Some(s) => Some(s.to_string()),
            None => {
                self.err(
                    ParseErrorCode::WrongType,
                    &format!("{path}.{key}"),
                    "expected a string".into(),
                );
                None
            }
        }
    }

    fn bool_field(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<bool> {
        let v = self.field(m, path, key)?;
        match v.as_bool() {
            Some(b) => Some(b),
            None => {
                self.err(
                    ParseErrorCode::WrongType,
                    &format!("{path}.{key}"),
                    "expected a boolean".into(),
                );
                None
            }
        }
    }

    fn f64_field(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<f64> {
        let v = self.field(m, path, key)?;
        match v.as_f64() {
            Some(x) => Some(x),
            None => {
                self.err(
                    ParseErrorCode::WrongType,
                    &format!("{path}.{key}"),
                    "expected a number".into(),
                );
                None
            }
        }
    }

    fn list_field<'a>(
        &mut self,
        m: &'a Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'a Vec<Value>> {
        let v = self.field(m, path, key)?;
        match v.as_array() {
            Some(a) => Some(a),
            None => {
                self.err(
                    ParseErrorCode::WrongType,
                    &format!("{path}.{key}"),
                    "expected an array".into(),
                );
                None
            }
        }
    }

    fn str_list_field(
        &mut self,
        m: &Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<Vec<String>> {
        let list = self.list_field(m, path, key)?;
        let mut out = Vec::with_capacity(list.len());
        let mut ok = true;
        for (i, v) in list.iter().enumerate() {
            match v.as_str() {
                Some(s) => out.push(s.to_string()),
                None => {
                    self.err(
                        ParseErrorCode::WrongType,
                        &format!("{path}.{key}[{i}]"),
                        "expected a string".into(),
                    );
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn token_field<T>(
        &mut self,
        m: &Map<String, Value>,
        path: &str,
        key: &str,
        parse: impl Fn(&str) -> Option<T>,
        expected: &str,
    ) -> Option<T> {
        let s = self.str_field(m, path, key)?;
        match parse(&s) {
            Some(t) => Some(t),
            None => {
                self.err(
                    ParseErrorCode::WrongType,
                    &format!("{path}.{key}"),
                    format!("unknown token {s:?}; expected one of: {expected}"),
                );
                None
            }
        }
    }
}

const LAYER_KINDS: &str = "transmission-media, path";
const SPACE_CLASSES: &str =
    "cabinet, pedestal, vault, service-room, central-office, headend, customer-premises, street-node, other";
const RP_KINDS: &str = "RPI-N, RPI-S, IrDI, IaDI, access-point";
const ACCESSIBILITIES: &str = "external, subsumed";
const GROUPS: &str = "NT1, NT2, AF, RG, TE, ONU, OLT, MSAN, DSLAM, CM, CMTS, RU, DU, CSR, OM-OD, power-splitter, P-router, PE-router, CE-router, optical-amplifier, ethernet-switch, other";

/// Parse a document from bytes. On success the document is shape-valid; it
/// may still fail `build_model` for semantic reasons.
pub fn parse_model(input: &str) -> Result<ModelDocument, Vec<ParseError>> {
    let value: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => {
            return Err(vec![ParseError {
                code: ParseErrorCode::Syntax,
                path: String::new(),
                message: format!("invalid JSON: {e}"),
                line: Some(e.line()),
                column: Some(e.column()),
            }]);
        }
    };

    let mut dec = Dec { errors: Vec::new() };
    let mut doc = ModelDocument {
        schema_version: String::new(),
        parts: ModelParts::default(),
    };

    if let Some(root) = dec.obj(&value, "") {
        dec.keys(
            root,
            "",
            &[
                "schema_version",
                "metadata",
                "layers",
                "sites",
                "elements",
                "links",
                "reference_points",
                "segments",
            ],
        );

        if let Some(v) = dec.str_field(root, "", "schema_version") {
            if v != SCHEMA_VERSION {
                dec.err(
                    ParseErrorCode::BadVersion,
                    "schema_version",
                    format!("unsupported schema version {v:?}; this build reads version \"{SCHEMA_VERSION}\""),
                );
            }
            doc.schema_version = v;
        }

        if let Some(v) = dec.field(root, "", "metadata") {
            if let Some(m) = dec.obj(v, "metadata") {
                dec.keys(m, "metadata", &["name", "author", "date", "notes"]);
                let name = dec.str_field(m, "metadata", "name");
                let author = dec.str_field(m, "metadata", "author");
                let date = dec.str_field(m, "metadata", "date");
                // `notes` is the one optional list: absent means empty.
                let notes = if m.contains_key("notes") {
                    dec.str_list_field(m, "metadata", "notes")
                } else {
                    Some(Vec::new())
                };
                if let (Some(name), Some(author), Some(date), Some(notes)) =
                    (name, author, date, notes)
                {
                    doc.parts.metadata = Metadata { name, author, date, notes };
                }
            }
        }

        doc.parts.layers = decode_collection(&mut dec, root, "layers", decode_layer);
        doc.parts.sites = decode_collection(&mut dec, root, "sites", decode_site);
        doc.parts.elements = decode_collection(&mut dec, root, "elements", decode_element);
        doc.parts.links = decode_collection(&mut dec, root, "links", decode_link);
        doc.parts.reference_points =
            decode_collection(&mut dec, root, "reference_points", decode_rp);
        doc.parts.segments = decode_collection(&mut dec, root, "segments", decode_segment);
    }

    if dec.errors.is_empty() {
        Ok(doc)
    } else {
        Err(dec.errors)
    }
}

fn decode_collection<T>(
    dec: &mut Dec,
    root: &Map<String, Value>,
    key: &str,
    decode: impl Fn(&mut Dec, &Map<String, Value>, &str) -> Option<T>,
) -> Vec<T> {
    let Some(list) = dec.list_field(root, "", key) else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(list.len());
    for (i, v) in list.iter().enumerate() {
        let path = format!("{key}[{i}]");
        if let Some(m) = dec.obj(v, &path) {
            if let Some(item) = decode(dec, m, &path) {
                out.push(item);
            }
        }
    }
    out
}

fn decode_layer(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<LayerNetwork> {
    dec.keys(m, path, &["id", "name", "kind", "characteristic_info", "server_layers"]);
    let id = dec.str_field(m, path, "id");
    let name = dec.str_field(m, path, "name");
    let kind = dec.token_field(m, path, "kind", LayerKind::from_token, LAYER_KINDS);
    let ci = dec.str_field(m, path, "characteristic_info");
    let servers = dec.str_list_field(m, path, "server_layers");
    Some(LayerNetwork {
        id: id?,
        name: name?,
        kind: kind?,
        characteristic_info: ci?,
        server_layers: servers?,
    })
}

fn decode_site(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<Site> {
    dec.keys(
        m,
        path,
        &[
            "id",
            "name",
            "location_label",
            "space_class",
            "has_power",
            "power_headroom_w",
            "has_ethernet_uplink",
        ],
    );
    let id = dec.str_field(m, path, "id");
    let name = dec.str_field(m, path, "name");
    let label = dec.str_field(m, path, "location_label");
    let class = dec.token_field(m, path, "space_class", SpaceClass::from_token, SPACE_CLASSES);
    let has_power = dec.bool_field(m, path, "has_power");
    let headroom = dec.f64_field(m, path, "power_headroom_w");
    let uplink = dec.bool_field(m, path, "has_ethernet_uplink");
    Some(Site {
        id: id?,
        name: name?,
        location_label: label?,
        space_class: class?,
        has_power: has_power?,
        power_headroom_w: headroom?,
        has_ethernet_uplink: uplink?,
    })
}

fn decode_element(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<NetworkElement> {
    dec.keys(
        m,
        path,
        &[
            "id",
            "name",
            "site_id",
            "operator_id",
            "functional_groups",
            "powered",
            "power_draw_w",
            "present_at_layers",
            "transparent_at_layers",
        ],
    );
    let id = dec.str_field(m, path, "id");
    let name = dec.str_field(m, path, "name");
    let site_id = dec.str_field(m, path, "site_id");
    let operator_id = dec.str_field(m, path, "operator_id");
    let groups = dec.str_list_field(m, path, "functional_groups").and_then(|tokens| {
        let mut out = Vec::with_capacity(tokens.len());
        let mut ok = true;
        for (i, t) in tokens.iter().enumerate() {
            match FunctionalGroup::from_token(t) {
                Some(g) => out.push(g),
                None => {
                    dec.err(
                        ParseErrorCode::WrongType,
                        &format!("{path}.functional_groups[{i}]"),
                        format!("unknown token {t:?}; expected one of: {GROUPS}"),
                    );
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    });
    let powered = dec.bool_field(m, path, "powered");
    let draw = dec.f64_field(m, path, "power_draw_w");
    let present = dec.str_list_field(m, path, "present_at_layers");
    let transparent = dec.str_list_field(m, path, "transparent_at_layers");
    Some(NetworkElement {
        id: id?,
        name: name?,
        site_id: site_id?,
        operator_id: operator_id?,
        functional_groups: groups?,
        powered: powered?,
        power_draw_w: draw?,
        present_at_layers: present?,
        transparent_at_layers: transparent?,
    })
}

fn decode_link(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<Link> {
    dec.keys(m, path, &["id", "layer_id", "endpoint_a", "endpoint_b", "server_trail"]);
    let id = dec.str_field(m, path, "id");
    let layer_id = dec.str_field(m, path, "layer_id");
    let a = dec.str_field(m, path, "endpoint_a");
    let b = dec.str_field(m, path, "endpoint_b");
    let trail = dec.str_list_field(m, path, "server_trail");
    Some(Link {
        id: id?,
        layer_id: layer_id?,
        endpoint_a: a?,
        endpoint_b: b?,
        server_trail: trail?,
    })
}

fn decode_rp(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<ReferencePoint> {
    dec.keys(
        m,
        path,
        &[
            "id",
            "designator",
            "kind",
            "layer_id",
            "upstream_element",
            "downstream_element",
            "accessibility",
            "subsuming_element",
        ],
    );
    let id = dec.str_field(m, path, "id");
    let designator = dec.str_field(m, path, "designator").map(|s| RpDesignator::from_token(&s));
    let kind = dec.token_field(m, path, "kind", RpKind::from_token, RP_KINDS);
    let layer_id = dec.str_field(m, path, "layer_id");
    let up = dec.str_field(m, path, "upstream_element");
    let down = dec.str_field(m, path, "downstream_element");
    let acc = dec.token_field(
        m,
        path,
        "accessibility",
        Accessibility::from_token,
        ACCESSIBILITIES,
    );
    // Nullable and may be omitted: subsumption applies to few points.
    let subsuming = match m.get("subsuming_element") {
        None | Some(Value::Null) => Some(None),
        Some(Value::String(s)) => Some(Some(s.clone())),
        Some(_) => {
            dec.err(
                ParseErrorCode::WrongType,
                &format!("{path}.subsuming_element"),
                "expected a string or null".into(),
            );
            None
        }
    };
    Some(ReferencePoint {
        id: id?,
        designator: designator?,
        kind: kind?,
        layer_id: layer_id?,
        upstream_element: up?,
        downstream_element: down?,
        accessibility: acc?,
        subsuming_element: subsuming?,
    })
}

fn decode_segment(dec: &mut Dec, m: &Map<String, Value>, path: &str) -> Option<Segment> {
    dec.keys(m, path, &["id", "name", "operator_id", "bounding_rp_ids"]);
    let id = dec.str_field(m, path, "id");
    let name = dec.str_field(m, path, "name").map(|s| SegmentName::from_token(&s));
    let operator_id = dec.str_field(m, path, "operator_id");
    let bounds = dec
        .str_list_field(m, path, "bounding_rp_ids")
        .map(|v| v.into_iter().collect::<BTreeSet<_>>());
    Some(Segment {
        id: id?,
        name: name?,
        operator_id: operator_id?,
        bounding_rp_ids: bounds?,
    })
}

#[derive(Serialize)]
struct DocOut<'a> {
    schema_version: &'static str,
    metadata: &'a Metadata,
    layers: Vec<&'a LayerNetwork>,
    sites: Vec<&'a Site>,
    elements: Vec<&'a NetworkElement>,
    links: Vec<&'a Link>,
    reference_points: Vec<&'a ReferencePoint>,
    segments: Vec<&'a Segment>,
}

/// Serialize a model to its canonical byte form: fixed key order, collections
/// sorted by id, two-space indentation, trailing newline. Equal models
/// produce identical bytes.
pub fn serialize_model(model: &Model) -> String {
    let doc = DocOut {
        schema_version: SCHEMA_VERSION,
        metadata: model.metadata(),
        layers: model.layers().collect(),
        sites: model.sites().collect(),
        elements: model.elements().collect(),
        links: model.links().collect(),
        reference_points: model.reference_points().collect(),
        segments: model.segments().collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("model serialization cannot fail");
    out.push('\n');
    out
}
