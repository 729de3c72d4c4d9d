// Temporary probe: tightness of the interval anc evaluator.
use decstar::ival::{funcs, Interval};
use decstar::score;

fn pt(v: f64) -> Interval {
    Interval::point(v)
}

fn boxed(c: [f64; 3], w: f64) -> [Interval; 3] {
    [
        Interval::new(c[0], c[0] + w),
        Interval::new(c[1], c[1] + w),
        Interval::new(c[2], c[2] + w),
    ]
}

fn main() {
    let s8 = 8.0f64.sqrt();
    println!("-- point enclosures (value from score::anc) --");
    for (y1, y2, y6) in [
        (2.51, 2.0, 2.0),
        (2.6, 2.2, 2.2),
        (2.51, 2.0, 2.51),
        (2.51, 2.51, 2.0),
        (s8, 2.0, 2.0),
        (s8 - 1e-6, 2.0, 2.0),
        (2.7, 2.4, 2.1),
    ] {
        let iv = funcs::anc(pt(y1), pt(y2), pt(y6));
        let v = score::anc(y1, y2, y6).unwrap();
        let inside = iv.contains(v);
        println!(
            "anc({y1:.7},{y2:.2},{y6:.2}) = [{:+.10}, {:+.10}] w={:.3e} point={:+.10} inside={inside}",
            iv.lo,
            iv.hi,
            iv.width(),
            v
        );
        assert!(inside, "enclosure violation");
    }

    println!("-- box widths near the low corner (2.51, 2, 2) --");
    for w in [1e-1, 1e-2, 1e-3, 1e-4] {
        let [b1, b2, b6] = boxed([2.51, 2.0, 2.0], w);
        let iv = funcs::anc(b1, b2, b6);
        println!("w={w:.0e}  [{:+.8}, {:+.8}] width={:.3e}  ratio={:.1}", iv.lo, iv.hi, iv.width(), iv.width() / w);
    }

    println!("-- box widths at the sup corner (sqrt8 - w, 2, 2) --");
    for w in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let b1 = Interval::new(s8 - w, s8);
        let b2 = Interval::new(2.0, 2.0 + w);
        let b6 = Interval::new(2.0, 2.0 + w);
        let iv = funcs::anc(b1, b2, b6);
        println!(
            "w={w:.0e}  [{:+.10}, {:+.10}] width={:.3e}  hi-margin={:+.3e}",
            iv.lo,
            iv.hi,
            iv.width(),
            0.0263 - iv.hi
        );
    }

    println!("-- random containment check --");
    let mut state = 0x243f6a8885a308d3u64;
    let mut rnd = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst: f64 = 0.0;
    for _ in 0..200_000 {
        let y1 = 2.51 + rnd() * (s8 - 2.51);
        let y2 = 2.0 + rnd() * 0.51;
        let y6 = 2.0 + rnd() * 0.51;
        let w = rnd() * 0.05;
        let b1 = Interval::new(y1, (y1 + w).min(s8));
        let b2 = Interval::new(y2, (y2 + w).min(2.51));
        let b6 = Interval::new(y6, (y6 + w).min(2.51));
        let iv = funcs::anc(b1, b2, b6);
        let px = y1 + (b1.hi - y1) * rnd();
        let py = y2 + (b2.hi - y2) * rnd();
        let pz = y6 + (b6.hi - y6) * rnd();
        let v = score::anc(px, py, pz).unwrap();
        assert!(
            iv.contains(v),
            "violation at ({px},{py},{pz}) in [{},{}]x[{},{}]x[{},{}]: {v} not in [{},{}]",
            b1.lo, b1.hi, b2.lo, b2.hi, b6.lo, b6.hi, iv.lo, iv.hi
        );
        worst = worst.max(v - 0.0263);
    }
    println!("200000 random (box, point) pairs enclosed; max point value - 0.0263 = {worst:+.3e}");
}
