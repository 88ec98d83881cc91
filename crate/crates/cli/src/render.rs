//! SVG output for diagrams, fronts, and the foliation schematic.
//!
//! Grid coordinates map to pixels with `z` pointing up, as in the usual
//! pictures. Every countable glyph carries a class: `dot`, `box`,
//! `template-dot`, `template-box`, `gap`, `cusp`, `elliptic`, `hyperbolic`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use legtangle::boxdot::{mark_classes, BoxDotDiagram, BoxDotTemplate, MarkKind, Sign};
use legtangle::tangle::{FrontProjection, JunctionKind, Opening, Slope};
use legtangle::{Error, HalfPoint, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Template,
    Subdivision,
    Marks,
    Signs,
    Classes,
    Tangle,
    Unknot,
    Foliation,
}

impl Layer {
    pub const ALL: [Layer; 8] = [
        Layer::Template,
        Layer::Subdivision,
        Layer::Marks,
        Layer::Signs,
        Layer::Classes,
        Layer::Tangle,
        Layer::Unknot,
        Layer::Foliation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Layer::Template => "template",
            Layer::Subdivision => "subdivision",
            Layer::Marks => "marks",
            Layer::Signs => "signs",
            Layer::Classes => "classes",
            Layer::Tangle => "tangle",
            Layer::Unknot => "unknot",
            Layer::Foliation => "foliation",
        }
    }

    /// Layers drawn by [`render_boxdot`].
    pub fn is_boxdot(&self) -> bool {
        matches!(self, Layer::Template | Layer::Subdivision | Layer::Marks | Layer::Signs | Layer::Classes)
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Layer::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidRenderOptions(format!("unknown layer `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    scale: f64,
    layers: BTreeSet<Layer>,
    pub positive: String,
    pub negative: String,
}

impl RenderOptions {
    /// Red for positive marks, blue for negative.
    pub fn new(scale: f64, layers: impl IntoIterator<Item = Layer>) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidRenderOptions(format!("scale must be positive, got {scale}")));
        }
        let layers: BTreeSet<Layer> = layers.into_iter().collect();
        if layers.is_empty() {
            return Err(Error::InvalidRenderOptions("layer set is empty".into()));
        }
        Ok(Self { scale, layers, positive: "#d62728".into(), negative: "#1f5fd6".into() })
    }

    /// Parses a comma-separated layer list such as `"marks,signs"`.
    pub fn parse_layers(list: &str) -> Result<Vec<Layer>> {
        list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
    }

    pub fn has(&self, l: Layer) -> bool {
        self.layers.contains(&l)
    }

    pub fn layers(&self) -> impl Iterator<Item = Layer> + '_ {
        self.layers.iter().copied()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn color(&self, s: Option<Sign>) -> &str {
        match s {
            Some(Sign::Positive) if self.has(Layer::Signs) => &self.positive,
            Some(Sign::Negative) if self.has(Layer::Signs) => &self.negative,
            _ => "#222",
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

/// Maps grid units to pixels.
struct Canvas {
    scale: f64,
    height: f64,
    margin: f64,
    body: String,
}

impl Canvas {
    fn new(height: i64, o: &RenderOptions) -> Self {
        Canvas { scale: o.scale, height: height as f64, margin: o.scale / 2.0, body: String::new() }
    }

    fn x(&self, gx: f64) -> f64 {
        self.margin + gx * self.scale
    }

    fn y(&self, gz: f64) -> f64 {
        self.margin + (self.height - gz) * self.scale
    }

    fn px(&self, p: HalfPoint) -> (String, String) {
        (num(self.x(p.x2 as f64 / 2.0)), num(self.y(p.z2 as f64 / 2.0)))
    }

    fn line(&mut self, s: &str) {
        self.body.push_str("  ");
        self.body.push_str(s);
        self.body.push('\n');
    }

    fn finish(self, width: i64, title: &str) -> String {
        let w = num(width as f64 * self.scale + 2.0 * self.margin);
        let h = num(self.height * self.scale + 2.0 * self.margin);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <title>{title}</title>\n{}</svg>\n",
            self.body
        )
    }
}

fn dot_glyph(c: &Canvas, p: HalfPoint, class: &str, fill: &str, r: f64) -> String {
    let (x, y) = c.px(p);
    format!("<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{fill}\"/>", num(r))
}

fn box_glyph(c: &Canvas, p: HalfPoint, class: &str, fill: &str, side: f64) -> String {
    let x = c.x(p.x2 as f64 / 2.0) - side / 2.0;
    let y = c.y(p.z2 as f64 / 2.0) - side / 2.0;
    format!(
        "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>",
        num(x),
        num(y),
        num(side),
        num(side)
    )
}

fn frame(c: &mut Canvas, t: &BoxDotTemplate) {
    let (x, y) = c.px(HalfPoint::integral(0, t.height()));
    let line = format!(
        "<rect class=\"frame\" x=\"{x}\" y=\"{y}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>",
        num(t.width() as f64 * c.scale),
        num(t.height() as f64 * c.scale)
    );
    c.line(&line);
}

/// Template, subdivision, marks, signs, and mark classes of a diagram.
pub fn render_boxdot(d: &BoxDotDiagram, o: &RenderOptions) -> String {
    let t = d.template();
    let mut c = Canvas::new(t.height(), o);
    let unit = o.scale;
    frame(&mut c, t);
    if o.has(Layer::Subdivision) {
        for s in d.subdivision().squares() {
            let (x, y) = c.px(HalfPoint::integral(s.x, s.z + s.size));
            let side = num(s.size as f64 * unit);
            c.line(&format!(
                "<rect class=\"square\" data-stage=\"{}\" x=\"{x}\" y=\"{y}\" width=\"{side}\" height=\"{side}\" fill=\"none\" stroke=\"#444\"/>",
                s.stage
            ));
        }
    }
    if o.has(Layer::Template) {
        for p in t.boxes() {
            let g = box_glyph(&c, p, "template-box", o.color(t.sign(p)), unit * 0.12);
            c.line(&g);
        }
        for p in t.dots() {
            let g = dot_glyph(&c, p, "template-dot", o.color(t.sign(p)), unit * 0.06);
            c.line(&g);
        }
    }
    if o.has(Layer::Marks) {
        for m in d.marks() {
            let fill = o.color(t.sign(m.point));
            let g = match m.kind {
                MarkKind::Dot => dot_glyph(&c, m.point, "dot", fill, unit * 0.12),
                MarkKind::Box => box_glyph(&c, m.point, "box", fill, unit * 0.24),
            };
            c.line(&g);
        }
    } else if o.has(Layer::Signs) && !o.has(Layer::Template) {
        for m in d.marks() {
            if let Some(s) = t.sign(m.point) {
                let (x, y) = c.px(m.point);
                c.line(&format!("<text class=\"sign\" x=\"{x}\" y=\"{y}\" fill=\"{}\">{s}</text>", o.color(Some(s))));
            }
        }
    }
    if o.has(Layer::Classes) {
        let classes = mark_classes(d);
        let rings = [("tagged", &classes.tagged, 0.2), ("shared", &classes.shared, 0.28)];
        for (class, pts, r) in rings {
            for p in pts.iter() {
                let (x, y) = c.px(*p);
                c.line(&format!(
                    "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke=\"#2a2\"/>",
                    num(unit * r)
                ));
            }
        }
        let mut ends: Vec<HalfPoint> = classes.endpoint.to_vec();
        ends.dedup();
        for p in ends {
            let (x, y) = c.px(p);
            c.line(&format!(
                "<circle class=\"endpoint\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke=\"#a2a\"/>",
                num(unit * 0.2)
            ));
        }
    }
    c.finish(t.width(), &format!("box-dot diagram {}", d.notation()))
}

/// Draws a front. Under-arcs are broken by a gap at each crossing; every
/// junction is drawn with a horizontal tangent.
pub fn render_front(fp: &FrontProjection, o: &RenderOptions) -> String {
    let mut c = Canvas::new(fp.q as i64, o);
    let cap = 0.15;
    let colors = ["#222", "#8a4b08"];
    let draw = |c: &mut Canvas, slope: Slope| {
        for a in fp.arcs.iter().filter(|a| a.slope == slope) {
            let (ax, az) = (a.from.x2 as f64 / 2.0, a.from.z2 as f64 / 2.0);
            let (bx, bz) = (a.to.x2 as f64 / 2.0, a.to.z2 as f64 / 2.0);
            let (sx, sz) = ((bx - ax).signum(), (bz - az).signum());
            let pts = [
                (ax, az),
                (ax + sx * cap, az),
                (ax + 2.0 * sx * cap, az + sz * cap),
                (bx - 2.0 * sx * cap, bz - sz * cap),
                (bx - sx * cap, bz),
                (bx, bz),
            ];
            let p: Vec<String> = pts.iter().map(|(x, z)| format!("{} {}", num(c.x(*x)), num(c.y(*z)))).collect();
            let color = colors[a.strand.unwrap_or(0) % 2];
            c.line(&format!(
                "<path class=\"arc\" d=\"M {} Q {} {} L {} Q {} {}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                p[0], p[1], p[2], p[3], p[4], p[5]
            ));
        }
    };
    draw(&mut c, Slope::Positive);
    for x in &fp.crossings {
        let g = dot_glyph(&c, x.point, "gap", "white", o.scale * 0.12);
        c.line(&g);
    }
    draw(&mut c, Slope::Negative);
    for j in fp.junctions.iter() {
        if let JunctionKind::Cusp(opening) = j.kind {
            let (x, y) = (c.x(j.point.x2 as f64 / 2.0), c.y(j.point.z2 as f64 / 2.0));
            let d = o.scale * 0.1 * if opening == Opening::Right { 1.0 } else { -1.0 };
            c.line(&format!(
                "<path class=\"cusp\" d=\"M {} {} L {} {} L {} {}\" fill=\"none\" stroke=\"#c60\"/>",
                num(x + d),
                num(y - d.abs()),
                num(x),
                num(y),
                num(x + d),
                num(y + d.abs())
            ));
        }
    }
    c.finish(fp.p as i64, "front projection")
}

/// Stencil picture of the signed foliation: an elliptic glyph per dot and a
/// pair of oppositely signed hyperbolic glyphs per box.
pub fn render_foliation_schematic(d: &BoxDotDiagram, o: &RenderOptions) -> String {
    let t = d.template();
    let mut c = Canvas::new(t.height(), o);
    let unit = o.scale;
    frame(&mut c, t);
    c.line(&format!("<text class=\"label\" x=\"{}\" y=\"{}\">schematic</text>", num(c.margin), num(c.margin * 0.8)));
    let paint = |s: Sign| if s == Sign::Positive { o.positive.as_str() } else { o.negative.as_str() };
    for m in d.marks() {
        let Some(sign) = t.sign(m.point) else { continue };
        let (x, y) = (c.x(m.point.x2 as f64 / 2.0), c.y(m.point.z2 as f64 / 2.0));
        match m.kind {
            MarkKind::Dot => {
                let r = unit * 0.18;
                let mut g = format!("<g class=\"elliptic\" data-sign=\"{sign}\">");
                let _ = write!(g, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>", num(x), num(y), num(r * 0.4), paint(sign));
                for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                    let _ = write!(
                        g,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>",
                        num(x),
                        num(y),
                        num(x + dx * r),
                        num(y + dy * r),
                        paint(sign)
                    );
                }
                g.push_str("</g>");
                c.line(&g);
            }
            MarkKind::Box => {
                let r = unit * 0.1;
                let mut g = String::from("<g class=\"hyperbolic\">");
                for (offset, s) in [(-0.2, sign), (0.2, sign.flip())] {
                    let cx = x + offset * unit;
                    let _ = write!(
                        g,
                        "<path class=\"hyperbolic-point\" data-sign=\"{s}\" d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"{}\"/>",
                        num(cx - r),
                        num(y - r),
                        num(cx + r),
                        num(y + r),
                        num(cx - r),
                        num(y + r),
                        num(cx + r),
                        num(y - r),
                        paint(s)
                    );
                }
                g.push_str("</g>");
                c.line(&g);
            }
        }
    }
    c.finish(t.width(), &format!("foliation schematic {}", d.notation()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_validate() {
        assert!(RenderOptions::new(0.0, [Layer::Marks]).is_err());
        assert!(RenderOptions::new(10.0, []).is_err());
        assert!(RenderOptions::parse_layers("marks,bogus").is_err());
        assert_eq!(RenderOptions::parse_layers("marks, signs").unwrap(), vec![Layer::Marks, Layer::Signs]);
    }

    #[test]
    fn number_format() {
        assert_eq!(num(2.0), "2");
        assert_eq!(num(2.5), "2.5");
        assert_eq!(num(-0.0001), "0");
    }
}
