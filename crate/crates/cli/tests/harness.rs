//! Harness-level behavior over realistic datasets: accuracy orderings on
//! hard and easy inputs, and fault detection through the verifier.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spider_cli::runner::mean_wrong_blocks;
use spider_cli::verify::{verify, Sample};
use spider_cli::workload::{self, QueryKind};
use spider_core::datagen::{self, CharClassMap};
use spider_core::{io, BitVector, SpiderIndex, StructureKind};

/// Synthetic protein-like text: leucine at its natural ~9.7% frequency,
/// other residues uniform.
fn protein_text(len: usize, seed: u64) -> Vec<u8> {
    const OTHERS: &[u8] = b"ACDEFGHIKMNPQRSTVWY";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            if rng.next_u64() % 1000 < 97 {
                b'L'
            } else {
                OTHERS[(rng.next_u64() % OTHERS.len() as u64) as usize]
            }
        })
        .collect()
}

#[test]
fn sparse_text_data_is_harder_to_predict_than_dense_random() {
    let text = protein_text(10_000_000, 0xBEEF);
    let sparse = datagen::text_to_bits(&text, &CharClassMap::protein());
    let density = sparse.count_ones() as f64 / sparse.len() as f64;
    assert!(
        (0.08..0.12).contains(&density),
        "unexpected density {density}"
    );

    let queries = workload::generate(
        QueryKind::Select,
        sparse.len(),
        sparse.count_ones(),
        200_000,
        3,
    )
    .queries;
    let spider = mean_wrong_blocks(&StructureKind::Spider.build(&sparse), &queries);
    let ni = mean_wrong_blocks(&StructureKind::NiSpider.build(&sparse), &queries);

    // the denser two-level sampling predicts sparse data noticeably better
    assert!(spider < ni, "spider {spider} vs ni {ni}");
    assert!(
        spider > 0.0 && ni > 0.0,
        "sparse data should not predict perfectly"
    );
    assert!(ni < 5.0, "ni mean {ni} far above the expected regime");

    // and sparse data is harder than half-density random for both
    let random = datagen::random_bits(10_000_000, 0.5, 0xD0E);
    let queries = workload::generate(
        QueryKind::Select,
        random.len(),
        random.count_ones(),
        200_000,
        3,
    )
    .queries;
    let ni_random = mean_wrong_blocks(&StructureKind::NiSpider.build(&random), &queries);
    assert!(
        ni_random < ni,
        "random {ni_random} should beat protein-like {ni}"
    );
}

#[test]
fn dense_vector_verifies_and_predicts_exactly() {
    // answers are exact at any length
    let bv = BitVector::ones(10_000_000);
    let idx = StructureKind::Spider.build(&bv);
    verify(&idx, &bv, Sample::Full, 0).unwrap();

    // and with every sampling bucket full the predictions are exact too
    let n = 4096 * 2442; // near 1e7, a multiple of the dense-vector stride
    let bv = BitVector::ones(n);
    let idx = StructureKind::Spider.build(&bv);
    let queries = workload::generate(QueryKind::Select, n, n, 100_000, 9).queries;
    assert_eq!(mean_wrong_blocks(&idx, &queries), 0.0);
}

#[test]
fn corrupted_local_rank_is_detected() {
    let bv = datagen::random_bits(300_000, 0.5, 0xBAD);
    let idx = SpiderIndex::build(&bv);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.spix");
    io::save_spider_index(&idx, &path).unwrap();

    // flip a byte inside block 5's 16-bit local rank: header is 40 bytes,
    // then the length-prefixed rank array (n = 300000 spans 5 superblocks),
    // the block-count prefix, and 64 bytes per block
    let mut bytes = std::fs::read(&path).unwrap();
    let offset = 40 + 8 + 8 * 6 + 8 + 64 * 5;
    bytes[offset] ^= 0xFF;
    std::fs::write(&path, &bytes).unwrap();

    let tampered = io::load_spider_index(&path).unwrap();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        verify(
            &spider_core::AnyIndex::Spider(tampered),
            &bv,
            Sample::Full,
            0,
        )
    }));
    // either a query disagrees with the reference, or the corrupted count
    // derails a block scan outright; both expose the fault
    match outcome {
        Ok(Ok(stats)) => panic!("corruption went undetected: {stats:?}"),
        Ok(Err(mismatch)) => {
            assert_ne!(mismatch.expected, mismatch.got);
            // only queries whose answer or scan involves block 5 (positions
            // 2480..2976) can go wrong; rank mismatches report a position,
            // select mismatches report a rank whose true position is the
            // expected field
            let position = match mismatch.kind {
                QueryKind::Rank => mismatch.query,
                QueryKind::Select => mismatch.expected.unwrap(),
            };
            assert!(position >= 1984, "mismatch {mismatch} too early");
        }
        Err(_) => (),
    }
}
