use std::fmt::Write as _;
use std::ops::Range;

use crate::algebra::Vec3;
use crate::bennett::Pose;
use crate::families::CoupledPose;

/// Quad mesh with named face groups.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TubeMesh {
    pub vertices: Vec<Vec3<f64>>,
    /// Zero-based vertex indices, counter-clockwise in the patch parameters.
    pub faces: Vec<[usize; 4]>,
    pub groups: Vec<(String, Range<usize>)>,
}

fn bilinear(q: &[Vec3<f64>; 4], u: f64, v: f64) -> Vec3<f64> {
    let w = [(1.0 - u) * (1.0 - v), u * (1.0 - v), u * v, (1.0 - u) * v];
    let mut p = Vec3::zero();
    for (c, x) in w.iter().zip(q) {
        p = &p + &x.scale(c);
    }
    p
}

/// `(n+1)^2` points of the bilinear (hyperbolic paraboloid) patch through
/// the corners, row by row in `v`, and its `n^2` quads.
pub fn hp_patch(quad: &[Vec3<f64>; 4], n: usize) -> TubeMesh {
    let mut m = TubeMesh::default();
    m.push_patch("patch", quad, n);
    m
}

impl TubeMesh {
    pub fn push_patch(&mut self, name: &str, quad: &[Vec3<f64>; 4], n: usize) {
        let n = n.max(1);
        let base = self.vertices.len();
        let first = self.faces.len();
        for j in 0..=n {
            for i in 0..=n {
                self.vertices.push(bilinear(quad, i as f64 / n as f64, j as f64 / n as f64));
            }
        }
        let at = |i: usize, j: usize| base + j * (n + 1) + i;
        for j in 0..n {
            for i in 0..n {
                self.faces.push([at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]);
            }
        }
        self.groups.push((name.to_string(), first..self.faces.len()));
    }

    /// Every index in range and every coordinate finite.
    pub fn lint(&self) -> Result<(), String> {
        if let Some(v) = self.vertices.iter().position(|v| v.0.iter().any(|x| !x.is_finite())) {
            return Err(format!("vertex {v} is not finite"));
        }
        for (k, f) in self.faces.iter().enumerate() {
            if f.iter().any(|&i| i >= self.vertices.len()) {
                return Err(format!("face {k} references a missing vertex"));
            }
        }
        Ok(())
    }

    /// OBJ text with `v`, `g` and `f` records only.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", sig12(v.0[0]), sig12(v.0[1]), sig12(v.0[2]));
        }
        for (name, range) in &self.groups {
            let _ = writeln!(out, "g {name}");
            for f in &self.faces[range.clone()] {
                let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
            }
        }
        out
    }
}

/// Decimal with 12 significant digits, trailing zeros trimmed, no `-0`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Ribbon construction: each link between consecutive axes is the patch
/// through the two anchors moved by `+-width` along the unit axis directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RibbonOptions {
    pub patch_n: usize,
    /// Half-width of a ribbon; `None` uses a tenth of the mean link length.
    pub width: Option<f64>,
}

impl Default for RibbonOptions {
    fn default() -> Self {
        RibbonOptions { patch_n: 4, width: None }
    }
}

fn link_quad(a: &Vec3<f64>, ra: &Vec3<f64>, b: &Vec3<f64>, rb: &Vec3<f64>, w: f64) -> [Vec3<f64>; 4] {
    let (ua, ub) = (ra.normalized().scale(&w), rb.normalized().scale(&w));
    [a - &ua, b - &ub, b + &ub, a + &ua]
}

fn mean_link(anchors: &[Vec3<f64>; 4]) -> f64 {
    (0..4).map(|i| (&anchors[(i + 1) % 4] - &anchors[i]).norm()).sum::<f64>() / 4.0
}

fn push_loop(
    m: &mut TubeMesh,
    prefix: &str,
    labels: [String; 4],
    anchors: &[Vec3<f64>; 4],
    dirs: &[Vec3<f64>; 4],
    opts: &RibbonOptions,
) {
    let w = opts.width.unwrap_or(0.1 * mean_link(anchors));
    for i in 0..4 {
        let j = (i + 1) % 4;
        let q = link_quad(&anchors[i], &dirs[i], &anchors[j], &dirs[j], w);
        m.push_patch(&format!("{prefix}_{}_{}", labels[i], labels[j]), &q, opts.patch_n);
    }
}

/// Four ribbons of a single loop, anchored at the axis feet.
pub fn loop_mesh(pose: &Pose<f64>, opts: &RibbonOptions) -> TubeMesh {
    let mut m = TubeMesh::default();
    let labels = pose.axes.clone().map(|a| a.label.to_string());
    push_loop(&mut m, "bennett", labels, &pose.f_points(), &pose.directions(), opts);
    m
}

/// Eight ribbons, four per loop, all anchored at the shared vertices.
pub fn coupled_mesh(c: &CoupledPose<f64>, opts: &RibbonOptions) -> TubeMesh {
    let mut m = TubeMesh::default();
    let labels = c.pose.axes.clone().map(|a| a.label.to_string());
    let own = c.pose.directions();
    let hat: [Vec3<f64>; 4] = std::array::from_fn(|i| c.hat_axes[i].r.clone());
    push_loop(&mut m, "bennett", labels.clone(), &c.quad.p, &own, opts);
    push_loop(&mut m, "partner", labels, &c.quad.p, &hat, opts);
    m
}
