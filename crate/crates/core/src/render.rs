//! Deterministic SVG drawings of the construction.
//!
//! Figures: 1 base construction, 2 with `GH`/`GJ`, 3-8 Regions A-F shaded,
//! 9 the semicircle decomposition composite. The y-axis flip is applied to
//! the emitted numbers; there is no `transform` attribute. Output depends only
//! on the scene and options, so repeated calls produce identical bytes.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::geometry::{chord_side, ConstructionScene, Point};
use crate::region::{region_spec, RegionId, RegionSpec};

pub const COLOR_CIRCLE_D: &str = "#1f4fd8";
pub const COLOR_CIRCLE_E: &str = "#d81f1f";
pub const COLOR_CIRCLE_F: &str = "#1f9d3a";
pub const COLOR_SEMICIRCLE_C: &str = "#f2d64b";
pub const COLOR_LEG_SEMICIRCLE: &str = "#a0522d";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FigureId(u8);

impl FigureId {
    pub fn new(k: u8) -> Result<Self> {
        if (1..=9).contains(&k) {
            Ok(FigureId(k))
        } else {
            domain(format!("figure must be in 1..=9 (got {k})"))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FigureId> {
        (1..=9).map(FigureId)
    }

    /// The single shaded segment of figures 3-8.
    pub fn segment(self) -> Option<RegionId> {
        match self.0 {
            3..=8 => Some(RegionId::SEGMENTS[usize::from(self.0 - 3)]),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub width_px: u32,
    pub margin_frac: f64,
    pub decimals: usize,
    pub show_labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width_px: 512,
            margin_frac: 0.1,
            decimals: 6,
            show_labels: true,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        if self.width_px < 64 {
            return domain(format!("width must be at least 64 px (got {})", self.width_px));
        }
        if !(self.margin_frac > 0.0 && self.margin_frac < 0.5) {
            return domain(format!("margin must lie in (0, 0.5) (got {})", self.margin_frac));
        }
        if !(1..=12).contains(&self.decimals) {
            return domain(format!("decimals must lie in 1..=12 (got {})", self.decimals));
        }
        Ok(())
    }
}

/// World-to-screen mapping for one scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min_x: f64,
    pub max_y: f64,
    /// Pixels per world unit.
    pub scale: f64,
    pub size_px: f64,
}

impl Viewport {
    /// Disk D's bounding box grown by `margin_frac` of its width on every side.
    pub fn new(scene: &ConstructionScene, opts: &RenderOptions) -> Self {
        let disk = scene.circle_d();
        let pad = opts.margin_frac * 2.0 * disk.radius;
        let span = 2.0 * disk.radius + 2.0 * pad;
        let size_px = f64::from(opts.width_px);
        Viewport {
            min_x: disk.center.x - disk.radius - pad,
            max_y: disk.center.y + disk.radius + pad,
            scale: size_px / span,
            size_px,
        }
    }

    pub fn to_screen(&self, p: Point) -> Point {
        Point::new((p.x - self.min_x) * self.scale, (self.max_y - p.y) * self.scale)
    }
}

struct Svg {
    out: String,
    view: Viewport,
    decimals: usize,
}

impl Svg {
    fn num(&self, v: f64) -> String {
        let s = format!("{:.*}", self.decimals, v);
        // Avoid "-0.000" for values that round to zero.
        if s.starts_with('-') && s[1..].chars().all(|ch| ch == '0' || ch == '.') {
            s[1..].to_string()
        } else {
            s
        }
    }

    fn xy(&self, p: Point) -> (String, String) {
        let s = self.view.to_screen(p);
        (self.num(s.x), self.num(s.y))
    }

    fn region_path(&mut self, spec: &RegionSpec, fill: &str, opacity: &str) {
        let r = spec.disk.radius * self.view.scale;
        let (fx, fy) = self.xy(spec.chord_from);
        let (tx, ty) = self.xy(spec.chord_to);
        let (large, sweep) = arc_flags(spec);
        let r = self.num(r);
        let _ = writeln!(
            self.out,
            r#"  <path class="region" id="region-{id}" d="M {fx} {fy} L {tx} {ty} A {r} {r} 0 {large} {sweep} {fx} {fy} Z" fill="{fill}" fill-opacity="{opacity}" stroke="none"/>"#,
            id = spec.id,
        );
    }

    fn circle(&mut self, name: &str, center: Point, radius: f64, color: &str) {
        let (cx, cy) = self.xy(center);
        let r = self.num(radius * self.view.scale);
        let _ = writeln!(
            self.out,
            r#"  <circle class="circle" id="circle-{name}" cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
        );
    }

    fn line(&mut self, class: &str, p: Point, q: Point) {
        let (x1, y1) = self.xy(p);
        let (x2, y2) = self.xy(q);
        let dash = match class {
            "dashed" => r#" stroke-dasharray="6 4""#,
            "dotted" => r#" stroke-dasharray="1.5 3""#,
            _ => "",
        };
        let width = if class == "edge" { "2" } else { "1" };
        let _ = writeln!(
            self.out,
            r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="{width}"{dash}/>"#
        );
    }

    fn label(&mut self, text: &str, at: Point, dx: f64, dy: f64) {
        let s = self.view.to_screen(at);
        let x = self.num(s.x + dx);
        let y = self.num(s.y + dy);
        let _ = writeln!(
            self.out,
            r#"  <text class="label" x="{x}" y="{y}" font-family="serif" font-size="14" text-anchor="middle">{text}</text>"#
        );
    }
}

/// SVG `large-arc` and `sweep` flags for the arc drawn from `chord_to` back to
/// `chord_from` on the region's side.
///
/// The boundary `from -> to -> arc` runs clockwise in world coordinates
/// exactly when the region is right of the chord. The y-flip keeps the picture
/// upright, so that is also clockwise on screen, which is SVG's sweep = 1.
pub fn arc_flags(spec: &RegionSpec) -> (u8, u8) {
    let side = chord_side(spec.interior_witness, spec.chord_from, spec.chord_to).unwrap_or(1);
    let dir = spec.chord_to - spec.chord_from;
    let normal = Point::new(-dir.y, dir.x) * (f64::from(side) / dir.norm());
    let center_offset = (spec.disk.center - spec.chord_from).dot(normal);
    let large = u8::from(center_offset > 1e-12 * spec.disk.radius);
    let sweep = u8::from(side < 0);
    (large, sweep)
}

fn shaded_regions(fig: FigureId) -> Vec<(RegionId, &'static str, &'static str)> {
    if let Some(id) = fig.segment() {
        let color = match id {
            RegionId::RA | RegionId::RB => COLOR_CIRCLE_D,
            RegionId::RC | RegionId::RD => COLOR_CIRCLE_E,
            _ => COLOR_CIRCLE_F,
        };
        return vec![(id, color, "0.35")];
    }
    if fig.get() == 9 {
        return vec![
            (RegionId::SC, COLOR_SEMICIRCLE_C, "0.45"),
            (RegionId::SB, COLOR_LEG_SEMICIRCLE, "0.35"),
            (RegionId::SA, COLOR_LEG_SEMICIRCLE, "0.35"),
            (RegionId::RA, COLOR_CIRCLE_D, "0.35"),
            (RegionId::RB, COLOR_CIRCLE_D, "0.35"),
            (RegionId::RC, COLOR_CIRCLE_E, "0.35"),
            (RegionId::RD, COLOR_CIRCLE_E, "0.35"),
            (RegionId::RE, COLOR_CIRCLE_F, "0.35"),
            (RegionId::RF, COLOR_CIRCLE_F, "0.35"),
        ];
    }
    Vec::new()
}

pub fn render_figure(scene: &ConstructionScene, fig: FigureId, opts: &RenderOptions) -> Result<String> {
    opts.validate()?;
    let view = Viewport::new(scene, opts);
    let mut svg = Svg {
        out: String::new(),
        view,
        decimals: opts.decimals,
    };
    let size = svg.num(view.size_px);
    let k = fig.get();
    let _ = writeln!(svg.out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(svg.out, "  <title>Figure {k}</title>");

    for (id, fill, opacity) in shaded_regions(fig) {
        let spec = region_spec(id, scene)?;
        svg.region_path(&spec, fill, opacity);
    }

    let (dd, de, df) = (scene.circle_d(), scene.circle_e(), scene.circle_f());
    svg.circle("D", dd.center, dd.radius, COLOR_CIRCLE_D);
    svg.circle("E", de.center, de.radius, COLOR_CIRCLE_E);
    svg.circle("F", df.center, df.radius, COLOR_CIRCLE_F);

    let (a, b, c) = (scene.a(), scene.b(), scene.c());
    let (d, e, f, g, h, j) = (scene.d(), scene.e(), scene.f(), scene.g(), scene.h(), scene.j());
    svg.line("edge", a, b);
    svg.line("edge", b, c);
    svg.line("edge", c, a);

    match k {
        3 => {
            svg.line("dashed", c, d);
            svg.line("dashed", a, d);
        }
        4 => {
            svg.line("dashed", c, d);
            svg.line("dashed", d, b);
        }
        _ => {
            svg.line("dashed", g, c);
            svg.line("dashed", e, g);
            svg.line("dashed", f, g);
            if k != 1 {
                svg.line("dotted", g, h);
                svg.line("dotted", g, j);
            }
        }
    }

    if opts.show_labels {
        let off = 12.0;
        let mut labels = vec![
            ("A", a, -off, -off * 0.5),
            ("B", b, off, off * 1.3),
            ("C", c, -off, off * 1.3),
        ];
        match k {
            3 | 4 => labels.push(("D", d, off, 5.0)),
            _ => {
                labels.push(("D", d, 0.0, off * 1.4));
                labels.push(("E", e, -off, 5.0));
                labels.push(("F", f, 0.0, off * 1.4));
                labels.push(("G", g, off, -off * 0.5));
                if k != 1 {
                    labels.push(("H", h, -off, 5.0));
                    labels.push(("J", j, 0.0, off * 1.4));
                }
            }
        }
        for (text, at, dx, dy) in labels {
            svg.label(text, at, dx, dy);
        }
    }

    svg.out.push_str("</svg>\n");
    Ok(svg.out)
}

/// Area enclosed by a one-chord, one-arc region path, in world units.
/// Used to cross-check the emitted flags and radius against [`RegionSpec`].
pub fn region_path_world_area(spec: &RegionSpec) -> f64 {
    let (large, _) = arc_flags(spec);
    let r = spec.disk.radius;
    let half = 0.5 * spec.chord_from.distance(spec.chord_to);
    let minor = 2.0 * (half / r).clamp(-1.0, 1.0).asin();
    let central = if large == 1 { 2.0 * PI - minor } else { minor };
    0.5 * r * r * (central - central.sin())
}
