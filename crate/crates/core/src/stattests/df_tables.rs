// Generated by `examples/df_tables.rs`: 100000 Monte Carlo replications per
// sample size of the Dickey-Fuller statistic (lag 0) under a Gaussian random
// walk; the Engle-Granger table uses residuals of y on (1, x) for two
// independent random walks. Rows are indexed by regression sample size.

#![allow(clippy::approx_constant)]

pub(crate) struct DfTable {
    pub sizes: &'static [usize],
    pub probs: &'static [f64],
    pub quantiles: &'static [&'static [f64]],
}

static PROBS: [f64; 33] = [
    0.0001, 0.0005, 0.001, 0.005, 0.01, 0.025, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6,
    0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.925, 0.95, 0.975, 0.99, 0.995, 0.999, 0.9995, 0.9999,
];

pub(crate) static ADF_NONE: DfTable = DfTable {
    sizes: &[25, 50, 100, 250, 500, 1000, 2500],
    probs: &PROBS,
    quantiles: &[
        &[
            -4.2025, -3.8123, -3.5507, -2.9174, -2.6480, -2.2538, -1.9542, -1.7561, -1.6120, -1.3912, -1.2145, -1.0700,
            -0.9405, -0.8227, -0.7081, -0.5952, -0.4808, -0.3526, -0.2167, -0.0724, 0.0779, 0.2451, 0.4242, 0.6466,
            0.9290, 1.1071, 1.3392, 1.6980, 2.1438, 2.4486, 3.1608, 3.4681, 4.2742,
        ],
        &[
            -4.0608, -3.6406, -3.4049, -2.8641, -2.6116, -2.2459, -1.9494, -1.7568, -1.6117, -1.3927, -1.2240, -1.0774,
            -0.9513, -0.8346, -0.7192, -0.6035, -0.4808, -0.3563, -0.2206, -0.0779, 0.0741, 0.2384, 0.4229, 0.6380,
            0.9046, 1.0856, 1.3135, 1.6637, 2.0723, 2.3641, 2.9822, 3.1973, 3.7294,
        ],
        &[
            -4.0408, -3.6124, -3.3734, -2.8661, -2.5989, -2.2439, -1.9443, -1.7538, -1.6155, -1.3990, -1.2291, -1.0865,
            -0.9568, -0.8395, -0.7254, -0.6122, -0.4950, -0.3681, -0.2345, -0.0889, 0.0617, 0.2289, 0.4114, 0.6302,
            0.8949, 1.0719, 1.2920, 1.6277, 2.0254, 2.3077, 2.8977, 3.1086, 3.6511,
        ],
        &[
            -3.9093, -3.4675, -3.3376, -2.7958, -2.5590, -2.2324, -1.9403, -1.7556, -1.6165, -1.4052, -1.2398, -1.0976,
            -0.9679, -0.8492, -0.7328, -0.6196, -0.5009, -0.3743, -0.2400, -0.0978, 0.0563, 0.2220, 0.4096, 0.6228,
            0.8932, 1.0769, 1.3033, 1.6388, 2.0296, 2.3211, 2.9209, 3.1536, 3.5785,
        ],
        &[
            -3.8078, -3.5161, -3.3173, -2.7899, -2.5742, -2.2343, -1.9409, -1.7581, -1.6184, -1.3971, -1.2289, -1.0865,
            -0.9608, -0.8438, -0.7284, -0.6133, -0.4923, -0.3641, -0.2323, -0.0882, 0.0614, 0.2259, 0.4079, 0.6207,
            0.8876, 1.0592, 1.2891, 1.6355, 2.0338, 2.2989, 2.8248, 3.0257, 3.4216,
        ],
        &[
            -3.8033, -3.5200, -3.2843, -2.7879, -2.5688, -2.2259, -1.9439, -1.7614, -1.6217, -1.4047, -1.2348, -1.0919,
            -0.9648, -0.8481, -0.7345, -0.6214, -0.5039, -0.3767, -0.2398, -0.1002, 0.0498, 0.2130, 0.3947, 0.6098,
            0.8840, 1.0589, 1.2851, 1.6181, 1.9953, 2.2704, 2.8439, 3.0091, 3.4437,
        ],
        &[
            -3.9908, -3.5176, -3.3153, -2.8045, -2.5692, -2.2263, -1.9383, -1.7555, -1.6123, -1.3998, -1.2337, -1.0884,
            -0.9629, -0.8452, -0.7301, -0.6183, -0.5000, -0.3731, -0.2377, -0.0930, 0.0570, 0.2217, 0.4052, 0.6213,
            0.8936, 1.0648, 1.2864, 1.6238, 2.0154, 2.2914, 2.7972, 2.9967, 3.4199,
        ],
    ],
};

pub(crate) static ADF_CONSTANT: DfTable = DfTable {
    sizes: &[25, 50, 100, 250, 500, 1000, 2500],
    probs: &PROBS,
    quantiles: &[
        &[
            -5.6450, -5.0588, -4.7000, -4.0267, -3.7262, -3.3203, -2.9840, -2.7857, -2.6323, -2.4043, -2.2354, -2.0917,
            -1.9640, -1.8511, -1.7412, -1.6368, -1.5342, -1.4342, -1.3277, -1.2168, -1.0973, -0.9609, -0.8022, -0.6117,
            -0.3609, -0.2022, 0.0104, 0.3320, 0.7239, 1.0107, 1.5769, 1.8404, 2.4336,
        ],
        &[
            -5.1135, -4.6441, -4.3690, -3.8092, -3.5682, -3.2080, -2.9132, -2.7305, -2.5961, -2.3866, -2.2259, -2.0855,
            -1.9650, -1.8560, -1.7515, -1.6504, -1.5519, -1.4540, -1.3495, -1.2388, -1.1207, -0.9905, -0.8332, -0.6440,
            -0.4033, -0.2438, -0.0361, 0.2843, 0.6671, 0.8998, 1.3870, 1.5689, 2.0656,
        ],
        &[
            -4.7967, -4.4320, -4.2452, -3.7426, -3.5023, -3.1690, -2.8904, -2.7107, -2.5769, -2.3780, -2.2185, -2.0868,
            -1.9663, -1.8571, -1.7549, -1.6548, -1.5536, -1.4545, -1.3513, -1.2467, -1.1319, -1.0031, -0.8470, -0.6637,
            -0.4257, -0.2687, -0.0590, 0.2594, 0.6365, 0.8886, 1.4159, 1.6044, 1.8924,
        ],
        &[
            -4.7633, -4.3249, -4.1372, -3.6989, -3.4826, -3.1443, -2.8820, -2.7111, -2.5804, -2.3810, -2.2224, -2.0893,
            -1.9741, -1.8652, -1.7614, -1.6622, -1.5653, -1.4658, -1.3640, -1.2558, -1.1399, -1.0114, -0.8613, -0.6773,
            -0.4391, -0.2818, -0.0791, 0.2349, 0.6060, 0.8584, 1.3589, 1.6005, 2.1562,
        ],
        &[
            -4.6331, -4.2739, -4.1240, -3.6734, -3.4493, -3.1311, -2.8721, -2.6984, -2.5720, -2.3769, -2.2224, -2.0903,
            -1.9723, -1.8649, -1.7601, -1.6614, -1.5654, -1.4663, -1.3657, -1.2573, -1.1424, -1.0143, -0.8622, -0.6789,
            -0.4369, -0.2798, -0.0812, 0.2332, 0.6001, 0.8622, 1.3629, 1.5644, 1.9865,
        ],
        &[
            -4.6996, -4.2653, -4.1114, -3.6231, -3.4258, -3.1190, -2.8568, -2.6924, -2.5640, -2.3680, -2.2180, -2.0876,
            -1.9699, -1.8620, -1.7604, -1.6616, -1.5668, -1.4696, -1.3675, -1.2592, -1.1446, -1.0189, -0.8700, -0.6835,
            -0.4473, -0.2956, -0.0917, 0.2247, 0.5950, 0.8481, 1.3294, 1.5476, 2.0267,
        ],
        &[
            -4.6827, -4.2853, -4.0609, -3.6383, -3.4277, -3.1211, -2.8582, -2.6901, -2.5628, -2.3680, -2.2159, -2.0892,
            -1.9739, -1.8646, -1.7623, -1.6625, -1.5656, -1.4677, -1.3679, -1.2604, -1.1461, -1.0196, -0.8664, -0.6779,
            -0.4346, -0.2817, -0.0846, 0.2348, 0.6228, 0.8719, 1.3545, 1.5394, 1.9718,
        ],
    ],
};

pub(crate) static ADF_TREND: DfTable = DfTable {
    sizes: &[25, 50, 100, 250, 500, 1000, 2500],
    probs: &PROBS,
    quantiles: &[
        &[
            -6.2061, -5.6709, -5.3562, -4.6933, -4.3788, -3.9494, -3.6092, -3.4014, -3.2467, -3.0104, -2.8314, -2.6874,
            -2.5589, -2.4454, -2.3392, -2.2393, -2.1409, -2.0440, -1.9479, -1.8500, -1.7479, -1.6363, -1.5096, -1.3583,
            -1.1476, -1.0079, -0.8171, -0.5246, -0.1820, 0.0866, 0.5846, 0.7963, 1.1795,
        ],
        &[
            -5.7309, -5.1753, -4.9801, -4.3858, -4.1306, -3.7787, -3.5003, -3.3198, -3.1801, -2.9750, -2.8114, -2.6741,
            -2.5547, -2.4455, -2.3471, -2.2511, -2.1608, -2.0692, -1.9762, -1.8793, -1.7770, -1.6669, -1.5427, -1.3930,
            -1.1925, -1.0644, -0.8868, -0.5941, -0.2629, -0.0158, 0.4854, 0.6527, 1.0188,
        ],
        &[
            -5.5328, -4.9511, -4.7813, -4.2843, -4.0521, -3.7356, -3.4585, -3.2865, -3.1545, -2.9574, -2.8052, -2.6768,
            -2.5604, -2.4537, -2.3545, -2.2633, -2.1708, -2.0790, -1.9896, -1.8964, -1.7971, -1.6908, -1.5687, -1.4190,
            -1.2246, -1.0928, -0.9170, -0.6300, -0.2959, -0.0567, 0.4639, 0.6315, 0.9999,
        ],
        &[
            -5.1847, -4.8259, -4.6362, -4.2069, -3.9875, -3.6806, -3.4331, -3.2660, -3.1376, -2.9451, -2.7959, -2.6710,
            -2.5588, -2.4571, -2.3613, -2.2695, -2.1771, -2.0858, -1.9962, -1.9016, -1.8041, -1.6957, -1.5743, -1.4305,
            -1.2420, -1.1087, -0.9266, -0.6566, -0.3230, -0.0917, 0.3843, 0.5283, 0.8867,
        ],
        &[
            -5.1876, -4.7571, -4.6042, -4.1792, -3.9664, -3.6725, -3.4177, -3.2541, -3.1343, -2.9422, -2.7944, -2.6665,
            -2.5566, -2.4527, -2.3537, -2.2619, -2.1723, -2.0848, -1.9951, -1.9026, -1.8041, -1.6947, -1.5728, -1.4260,
            -1.2342, -1.1030, -0.9299, -0.6549, -0.3256, -0.1039, 0.3923, 0.5948, 1.1293,
        ],
        &[
            -5.2191, -4.8208, -4.6367, -4.1552, -3.9473, -3.6546, -3.4097, -3.2462, -3.1255, -2.9421, -2.7935, -2.6684,
            -2.5606, -2.4581, -2.3624, -2.2723, -2.1831, -2.0919, -2.0025, -1.9090, -1.8109, -1.7038, -1.5829, -1.4386,
            -1.2448, -1.1163, -0.9437, -0.6626, -0.3398, -0.1062, 0.3656, 0.5151, 0.8682,
        ],
        &[
            -5.3036, -4.7772, -4.6165, -4.1721, -3.9726, -3.6677, -3.4141, -3.2492, -3.1286, -2.9383, -2.7925, -2.6690,
            -2.5612, -2.4604, -2.3651, -2.2748, -2.1847, -2.0943, -2.0044, -1.9104, -1.8110, -1.7028, -1.5839, -1.4387,
            -1.2477, -1.1171, -0.9456, -0.6586, -0.3180, -0.0752, 0.4066, 0.5894, 0.9566,
        ],
    ],
};

pub(crate) static ENGLE_GRANGER_2: DfTable = DfTable {
    sizes: &[25, 50, 100, 250, 500, 1000, 2500],
    probs: &PROBS,
    quantiles: &[
        &[
            -6.1863, -5.5953, -5.3400, -4.6424, -4.3501, -3.9313, -3.5909, -3.3806, -3.2170, -2.9739, -2.7928, -2.6452,
            -2.5139, -2.3949, -2.2863, -2.1809, -2.0796, -1.9775, -1.8736, -1.7669, -1.6595, -1.5409, -1.4055, -1.2406,
            -1.0188, -0.8662, -0.6614, -0.3392, 0.0293, 0.2799, 0.8289, 0.9896, 1.4657,
        ],
        &[
            -5.8402, -5.2021, -4.9441, -4.3776, -4.1247, -3.7503, -3.4580, -3.2698, -3.1304, -2.9174, -2.7522, -2.6113,
            -2.4866, -2.3755, -2.2692, -2.1672, -2.0655, -1.9686, -1.8677, -1.7647, -1.6567, -1.5363, -1.4008, -1.2406,
            -1.0136, -0.8592, -0.6529, -0.3254, 0.0695, 0.3202, 0.8783, 1.1028, 1.7063,
        ],
        &[
            -5.3821, -4.9520, -4.8022, -4.2620, -4.0178, -3.6849, -3.3956, -3.2200, -3.0868, -2.8843, -2.7244, -2.5904,
            -2.4712, -2.3612, -2.2554, -2.1571, -2.0600, -1.9619, -1.8651, -1.7595, -1.6512, -1.5338, -1.3981, -1.2336,
            -1.0100, -0.8594, -0.6495, -0.3202, 0.0683, 0.3250, 0.8918, 1.1261, 1.5382,
        ],
        &[
            -5.3791, -4.8066, -4.6285, -4.1581, -3.9460, -3.6283, -3.3569, -3.1913, -3.0649, -2.8652, -2.7074, -2.5754,
            -2.4575, -2.3506, -2.2506, -2.1511, -2.0542, -1.9600, -1.8626, -1.7651, -1.6558, -1.5371, -1.4007, -1.2341,
            -1.0100, -0.8593, -0.6498, -0.3254, 0.0899, 0.3543, 0.8745, 1.0968, 1.6025,
        ],
        &[
            -5.1784, -4.7192, -4.5611, -4.1116, -3.9165, -3.6109, -3.3497, -3.1806, -3.0526, -2.8576, -2.7010, -2.5702,
            -2.4544, -2.3458, -2.2456, -2.1491, -2.0541, -1.9561, -1.8596, -1.7594, -1.6506, -1.5322, -1.3947, -1.2332,
            -1.0058, -0.8506, -0.6438, -0.3068, 0.0829, 0.3788, 0.9202, 1.1158, 1.5728,
        ],
        &[
            -5.0622, -4.7281, -4.5775, -4.1146, -3.9086, -3.6133, -3.3515, -3.1829, -3.0515, -2.8550, -2.7014, -2.5717,
            -2.4531, -2.3488, -2.2479, -2.1526, -2.0550, -1.9597, -1.8603, -1.7599, -1.6525, -1.5357, -1.3983, -1.2352,
            -1.0110, -0.8587, -0.6477, -0.3112, 0.0980, 0.3694, 0.9328, 1.1165, 1.5989,
        ],
        &[
            -5.0626, -4.7263, -4.5737, -4.1152, -3.8979, -3.5953, -3.3384, -3.1763, -3.0513, -2.8560, -2.6988, -2.5710,
            -2.4554, -2.3489, -2.2462, -2.1497, -2.0547, -1.9549, -1.8574, -1.7580, -1.6479, -1.5296, -1.3981, -1.2348,
            -1.0073, -0.8534, -0.6366, -0.3005, 0.0835, 0.3640, 0.8717, 1.1616, 1.6766,
        ],
    ],
};
