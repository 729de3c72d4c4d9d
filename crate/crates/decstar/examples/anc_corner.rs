// Temporary probe: behavior of anc near the (sqrt8, 2, 2) corner.
use decstar::score;

fn main() {
    let s8 = 8.0f64.sqrt();
    println!("-- scan y1 = sqrt8 - t, y2 = y6 = 2 --");
    for k in 0..18 {
        let t = 10f64.powi(-(k as i32)) * 0.1;
        let y1 = s8 - t;
        let v = score::anc(y1, 2.0, 2.0).unwrap();
        println!("t = 1e-{:<3} anc = {:+.12}", k + 1, v);
    }
    println!("exact corner  anc = {:+.12}", score::anc(s8, 2.0, 2.0).unwrap());

    // Components of the one-sided limit.
    let a1 = s8 / 2.0; // sqrt2
    let lim_first = -std::f64::consts::FRAC_PI_2 * score::crown(a1) / (2.0 * std::f64::consts::PI);
    println!("limit of first term  = {:+.12}", lim_first);
    let corner_second = score::anc(s8, 2.0, 2.0).unwrap();
    println!("second term at corner = {:+.12}", corner_second);
    println!("one-sided limit total = {:+.12}", lim_first + corner_second);

    // 2-D scan of the corner neighborhood for the actual sup.
    let mut best = f64::NEG_INFINITY;
    let mut arg = (0.0, 0.0, 0.0);
    for i in 0..400 {
        let y1 = s8 - 1e-4 * (i as f64 + 0.5) / 400.0;
        for j in 0..40 {
            let y2 = 2.0 + 1e-3 * j as f64 / 40.0;
            for l in 0..40 {
                let y6 = 2.0 + 1e-3 * l as f64 / 40.0;
                let v = score::anc(y1, y2, y6).unwrap();
                if v > best {
                    best = v;
                    arg = (y1, y2, y6);
                }
            }
        }
    }
    println!("corner-neighborhood sup ~ {:+.12} at {:?}", best, arg);
    println!("threshold               = +0.0263");
}
