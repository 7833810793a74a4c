use flagconfig::io::{coords_to_json, parse_tuple};
use flagconfig::{fg_coords, Triangulation};
use projcore::{ProjLine, ProjPoint};
use projflow::render::{render_svg, Chart, RenderScene, Style};
use projflow::{adapted_triangulation, main_with};
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("projflow-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["projflow"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

#[test]
fn invariants_prints_the_tau_table() {
    let (code, out, _) = run(&["invariants", &data("triple.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("2.718281828459"), "{out}");
    assert!(out.contains("1.000000000000"));
    let (code, out, _) = run(&["invariants", &data("conic8.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines()
            .filter(|l| l.trim_start().starts_with(char::is_numeric))
            .count(),
        56
    );
}

#[test]
fn flow_coords_show_the_tau_shift() {
    let (code, out, _) = run(&[
        "flow",
        &data("octagon.json"),
        "--apply",
        "eruption:1,4,7@0.5",
        "--coords",
    ]);
    assert_eq!(code, 0);
    let row = out.lines().find(|l| l.starts_with("tau 1,4,7")).unwrap();
    let delta: f64 = row.split_whitespace().last().unwrap().parse().unwrap();
    assert!((delta - 0.5).abs() < 1e-9);
    for l in out
        .lines()
        .filter(|l| l.starts_with("sigma") || l.starts_with("tau"))
    {
        if !l.starts_with("tau 1,4,7") {
            let d: f64 = l.split_whitespace().last().unwrap().parse().unwrap();
            assert!(d.abs() < 1e-9, "{l}");
        }
    }
}

#[test]
fn flow_and_inverse_round_trip() {
    let dst = tmp("roundtrip.json");
    let (code, _, err) = run(&[
        "flow",
        &data("octagon.json"),
        "--apply",
        "shear:2,6@1.3",
        "--apply",
        "shear:2,6@-1.3",
        "--apply",
        "eruption:2,5,8@-0.7",
        "--apply",
        "eruption:2,5,8@0.7",
        "-o",
        &dst,
    ]);
    assert_eq!(code, 0, "{err}");
    let a = parse_tuple(&std::fs::read_to_string(data("octagon.json")).unwrap()).unwrap();
    let b = parse_tuple(&std::fs::read_to_string(&dst).unwrap()).unwrap();
    let tri = Triangulation::fan(8).unwrap();
    assert!(
        fg_coords(&a, &tri)
            .unwrap()
            .max_diff(&fg_coords(&b, &tri).unwrap())
            < 1e-9
    );
}

#[test]
fn reconstruct_inverts_coordinates() {
    let t = parse_tuple(&std::fs::read_to_string(data("octagon.json")).unwrap()).unwrap();
    let tri = Triangulation::fan(8).unwrap();
    let c = fg_coords(&t, &tri).unwrap();
    let src = tmp("coords.json");
    std::fs::write(&src, coords_to_json(&c)).unwrap();
    let (code, out, _) = run(&["reconstruct", &src]);
    assert_eq!(code, 0);
    let back = parse_tuple(&out).unwrap();
    assert!(fg_coords(&back, &tri).unwrap().max_diff(&c) < 1e-8);
}

#[test]
fn adapted_triangulations_contain_the_anchors() {
    let specs = [
        "eruption:1,4,7@1",
        "shear:2,4@1",
        "bulge:5,7@1",
        "shear:3,8@1",
    ]
    .map(|s| s.parse().unwrap());
    let tri = adapted_triangulation(8, &specs).unwrap();
    assert!(tri.has_triangle([0, 3, 6]));
    assert!(tri.opposite(1, 3).is_some());
    assert!(tri.opposite(4, 6).is_some());
    // crosses 1-4, so it is left out
    assert!(tri.opposite(2, 7).is_none());
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.json");
    // second flag's line passes through the first point
    std::fs::write(&bad, r#"{"flags":[{"point":[1,0,1],"line":[1,0,-1]},{"point":[0,1,1],"line":[1,1,-1]},{"point":[-1,0,1],"line":[-1,0,-1]}]}"#).unwrap();
    assert_eq!(run(&["invariants", &bad]).0, 2);
    assert_eq!(run(&["invariants", &tmp("missing.json")]).0, 2);
    assert_eq!(
        run(&["flow", &data("triple.json"), "--apply", "twist:1,2@1"]).0,
        2
    );
    assert_eq!(
        run(&["flow", &data("triple.json"), "--apply", "shear:1,9@1"]).0,
        2
    );
    assert_eq!(run(&["render", &data("octagon.json"), "--frame"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);

    let zero = tmp("zero.json");
    let (_, json, _) = run(&[
        "surface",
        "flow",
        &data("genus2_fuchsian.json"),
        "--flow",
        "shear:C1",
        "--t",
        "0",
    ]);
    std::fs::write(
        &zero,
        json.replace("\"sigma_x\": 1.0", "\"sigma_x\": 0.0")
            .replace("\"sigma_y\": 1.0", "\"sigma_y\": 0.0"),
    )
    .unwrap();
    let (code, out, _) = run(&["surface", "validate", &zero]);
    assert_eq!(code, 2);
    assert!(out.contains("rejected"));

    let (code, out, err) = run(&[
        "surface",
        "converge",
        &data("genus2.json"),
        "--flow",
        "internal_shear:P1",
        "--t",
        "1",
    ]);
    assert_eq!(code, 3, "{err}");
    assert!(out.contains("cauchy: no"));
    assert_eq!(
        run(&[
            "surface",
            "converge",
            &data("genus2.json"),
            "--flow",
            "shear:C1",
            "--t",
            "1"
        ])
        .0,
        2
    );
}

#[test]
fn tolerance_override_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_projflow");
    let st = Command::new(bin)
        .args(["invariants", &data("triple.json")])
        .env("PROJFLOW_TOL", "eq=oops")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args(["invariants", &data("triple.json")])
        .env("PROJFLOW_TOL", "eq=1e-10,conv=1e-7")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
}

#[test]
fn surface_commands() {
    let (code, out, _) = run(&["surface", "validate", &data("genus2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("accepted"));

    let (code, json, _) = run(&[
        "surface",
        "flow",
        &data("genus2.json"),
        "--flow",
        "eruption:P2",
        "--t",
        "-1",
    ]);
    assert_eq!(code, 0);
    let (s, before) =
        surface::parse_bd(&std::fs::read_to_string(data("genus2.json")).unwrap()).unwrap();
    let (_, after) = surface::parse_bd(&json).unwrap();
    assert!((after.tau[s.delta(1)] - before.tau[s.delta(1)] + 1.0).abs() < 1e-12);

    let (code, out, _) = run(&[
        "surface",
        "converge",
        &data("genus2.json"),
        "--flow",
        "eruption:P1",
        "--t",
        "0.5",
        "--depth",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("agreement: yes").count(), 3);
    let (code, out, _) = run(&[
        "surface",
        "converge",
        &data("genus2.json"),
        "--flow",
        "internal_bulge:P2",
        "--t",
        "-1",
        "--shuffle",
        "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("cauchy: yes").count(), 3);
}

#[test]
fn svg_is_deterministic_and_matches_golden_hashes() {
    let cases: [(&str, &[&str], u64); 3] = [
        ("conic3.json", &["--frame"], 0xba58232207065e0d),
        ("octagon.json", &["--nested"], 0x26e8eed93db4fd3c),
        ("conic8.json", &[], 0xf970413770f78008),
    ];
    for (file, flags, want) in cases {
        let mut args = vec!["render", file];
        let path = data(file);
        args[1] = &path;
        args.extend_from_slice(flags);
        let (code, a, _) = run(&args);
        let (_, b, _) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml") && a.trim_end().ends_with("</svg>"));
        assert_eq!(fnv1a(&a), want, "{file} {flags:?}: {:#x}", fnv1a(&a));
    }
}

#[test]
fn conic_is_sampled_with_256_segments() {
    let (_, svg, _) = run(&["render", &data("conic8.json")]);
    let first = svg.lines().find(|l| l.contains("<polygon")).unwrap();
    let pts = first.split('"').nth(1).unwrap();
    assert_eq!(pts.split(' ').count(), 256);
    // no conic through a non-conic tuple
    let (_, svg, _) = run(&["render", &data("octagon.json")]);
    assert!(!svg.contains("<polygon"));
}

#[test]
fn empty_scene_and_chart_rotation() {
    let svg = render_svg(&RenderScene::default(), 100).unwrap();
    assert_eq!(svg.lines().filter(|l| l.starts_with("<svg")).count(), 1);
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("<polygon") && !svg.contains("<circle"));

    // a point on z = 0 forces a tilted chart
    let p = |v: [f64; 3]| ProjPoint::new(v).unwrap();
    let scene = RenderScene {
        polygons: vec![(
            vec![p([1.0, 0.0, 0.0]), p([0.0, 1.0, 1.0]), p([1.0, 1.0, 1.0])],
            Style::stroke("black", 1.0),
        )],
        lines: vec![(
            ProjLine::new([1.0, -1.0, 0.0]).unwrap(),
            Style::stroke("black", 1.0),
        )],
        points: vec![],
        chart: Chart::Standard,
    };
    let svg = render_svg(&scene, 200).unwrap();
    assert!(!svg.contains("inf") && !svg.contains("NaN"));
    assert_eq!(svg, render_svg(&scene, 200).unwrap());
}
