use micgrid::datagen::{generate, NoiseSpec, RelationshipKind};
use micgrid::mic::mic;
use micgrid::umic::umic;
use std::time::Instant;

#[test]
#[ignore]
fn probe() {
    for kind in RelationshipKind::FUNCTIONAL
        .into_iter()
        .chain(RelationshipKind::NON_FUNCTIONAL)
    {
        let d = generate(kind, 200, 1, &NoiseSpec::None).unwrap();
        let reps = 20;
        let t0 = Instant::now();
        for _ in 0..reps {
            let _ = mic(&d, 0.6).unwrap();
        }
        let mic_t = t0.elapsed().as_secs_f64() / reps as f64;
        let t0 = Instant::now();
        for _ in 0..reps {
            let _ = umic(&d, 0.6).unwrap();
        }
        let umic_t = t0.elapsed().as_secs_f64() / reps as f64;
        println!(
            "{:16} mic {:>10.1}us  umic {:>8.1}us  ratio {:>7.1}",
            kind.name(),
            mic_t * 1e6,
            umic_t * 1e6,
            mic_t / umic_t
        );
    }
}
