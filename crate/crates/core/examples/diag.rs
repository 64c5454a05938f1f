use lassokit::corpus::Corpus;
use lassokit::{functors, Caps};

fn main() {
    let caps = Caps::default();
    let corpus = Corpus::build(&caps).unwrap();
    let find = |name: &str| corpus.automata.iter().find(|(n, _)| n == name).unwrap();
    let (_, a) = find("rand31");
    let (_, b) = find("rand47");
    println!("rand31: |X|={} |Y|={}", a.x_count(), a.y_count());
    println!("rand47: |X|={} |Y|={}", b.x_count(), b.y_count());
    for bounds in [(3usize, 3usize), (4, 4), (5, 5), (6, 6), (8, 8)] {
        let sa = a.language_sample(bounds.0, bounds.1).unwrap();
        let sb = b.language_sample(bounds.0, bounds.1).unwrap();
        let diff = sa.first_difference(&sb).unwrap();
        println!("bounds {bounds:?}: equal={} first_diff={:?}", sa == sb, diff.map(|l| l.to_string()));
    }
    let ma = functors::minimize(a, &caps).unwrap();
    let mb = functors::minimize(b, &caps).unwrap();
    println!("min(rand31): {}+{}  min(rand47): {}+{}", ma.x_count(), ma.y_count(), mb.x_count(), mb.y_count());
    println!("iso: {}", functors::isomorphic(&ma, &mb).unwrap());
    // how many (3,3)-equal pairs fail exact equality?
    let mut bad = 0;
    let mut eq33 = 0;
    let samples: Vec<_> = corpus.automata.iter().map(|(_, a)| a.language_sample(4, 4).unwrap()).collect();
    let s33: Vec<_> = corpus.automata.iter().map(|(_, a)| a.language_sample(3, 3).unwrap()).collect();
    let mins: Vec<_> = corpus.automata.iter().map(|(_, a)| functors::minimize(a, &caps).unwrap()).collect();
    for i in 0..corpus.automata.len() {
        for j in i + 1..corpus.automata.len() {
            let e33 = s33[i] == s33[j];
            let e44 = samples[i] == samples[j];
            let iso = functors::isomorphic(&mins[i], &mins[j]).unwrap();
            if e33 { eq33 += 1; }
            if e33 != iso {
                bad += 1;
                println!("  (3,3) vs exact mismatch: {} {} (44equal={})", corpus.automata[i].0, corpus.automata[j].0, e44);
            }
            if e44 != iso {
                println!("  (4,4) vs exact mismatch: {} {}", corpus.automata[i].0, corpus.automata[j].0);
            }
        }
    }
    println!("(3,3)-equal pairs: {eq33}, mismatches vs exact: {bad}");
}
