// Generated by ml_reference.py; do not edit by hand.
pub const TWO_PARAM: &[(f64, f64, f64, f64)] = &[
    (0.3, 0.4, -0.5, 0.22379485874702784),
    (0.3, 0.4, -4.0, 0.03331937277641345),
    (0.3, 0.4, 2.5, 33773486134.719795),
    (0.3, 1.0, -0.5, 0.6326490059435991),
    (0.3, 1.0, -4.0, 0.16650174431551665),
    (0.3, 1.0, 2.5, 5403757781.174882),
    (0.3, 1.5, -0.5, 0.7589136993302599),
    (0.3, 1.5, -4.0, 0.2230232665799319),
    (0.3, 1.5, 2.5, 1173444424.8094826),
    (0.3, 2.2, -0.5, 0.6391326158907829),
    (0.3, 2.2, -4.0, 0.20414428559231051),
    (0.3, 2.2, 2.5, 138336198.50619572),
    (0.3, 3.0, -0.5, 0.36337615788536),
    (0.3, 3.0, -4.0, 0.12315103748139293),
    (0.3, 3.0, 2.5, 12016070.422092207),
    (0.6, 0.4, -0.5, 0.1460862882163111),
    (0.6, 0.4, -4.0, -0.02731244863386043),
    (0.6, 0.4, 2.5, 416.6901164756179),
    (0.6, 1.0, -0.5, 0.6094758219562),
    (0.6, 1.0, -4.0, 0.11953416195706788),
    (0.6, 1.0, 2.5, 166.4957169105694),
    (0.6, 1.5, -0.5, 0.7754283294737189),
    (0.6, 1.5, -4.0, 0.21019638565779647),
    (0.6, 1.5, 2.5, 77.24258740993102),
    (0.6, 2.2, -0.5, 0.6762531959650445),
    (0.6, 2.2, -4.0, 0.22476462363984728),
    (0.6, 2.2, 2.5, 26.031644724063046),
    (0.6, 3.0, -0.5, 0.39188632019267466),
    (0.6, 3.0, -4.0, 0.1486221978803572),
    (0.6, 3.0, 2.5, 7.2782716058901356),
    (0.9, 0.4, -0.5, 0.0727939586495449),
    (0.9, 0.4, -4.0, -0.09688188119296559),
    (0.9, 0.4, -30.0, -0.009848479593375372),
    (0.9, 0.4, 2.5, 32.67177937656505),
    (0.9, 1.0, -0.5, 0.603405498695861),
    (0.9, 1.0, -4.0, 0.050411103314434616),
    (0.9, 1.0, -30.0, 0.003713707698459852),
    (0.9, 1.0, 2.5, 17.668515949653905),
    (0.9, 1.5, -0.5, 0.8049077160331696),
    (0.9, 1.5, -4.0, 0.18341367143936715),
    (0.9, 1.5, -30.0, 0.0226481916139788),
    (0.9, 1.5, 2.5, 10.395250729206323),
    (0.9, 2.2, -0.5, 0.7163640549151389),
    (0.9, 2.2, -4.0, 0.2443289971126144),
    (0.9, 2.2, -30.0, 0.0366295584195903),
    (0.9, 2.2, 2.5, 4.709655824960381),
    (0.9, 3.0, -0.5, 0.41810598768954615),
    (0.9, 3.0, -4.0, 0.17768294015796038),
    (0.9, 3.0, -30.0, 0.030655231484886362),
    (0.9, 3.0, 2.5, 1.7362382185819314),
    (1.0, 0.4, -0.5, 0.05215094044231595),
    (1.0, 0.4, -4.0, -0.12623943271511173),
    (1.0, 0.4, -30.0, -0.009544993381096286),
    (1.0, 0.4, -200.0, -0.0013634356272612517),
    (1.0, 0.4, 2.5, 21.18176553984502),
    (1.0, 1.0, -0.5, 0.6065306597126334),
    (1.0, 1.0, -4.0, 0.01831563888873418),
    (1.0, 1.0, -30.0, 9.357622968840175e-14),
    (1.0, 1.0, -200.0, -1.6597243622424762e-64),
    (1.0, 1.0, 2.5, 12.182493960703473),
    (1.0, 1.5, -0.5, 0.8178249139031739),
    (1.0, 1.5, -4.0, 0.1700131085330331),
    (1.0, 1.5, -30.0, 0.019136916678945834),
    (1.0, 1.5, -200.0, 0.002828053853304281),
    (1.0, 1.5, 2.5, 7.50958750621725),
    (1.0, 2.2, -0.5, 0.7300645599862301),
    (1.0, 2.2, -4.0, 0.2511649136452706),
    (1.0, 2.2, -30.0, 0.03605523676542033),
    (1.0, 2.2, -200.0, 0.005440154501857543),
    (1.0, 2.2, 2.5, 3.5935471361174356),
    (1.0, 3.0, -0.5, 0.4261226388505337),
    (1.0, 3.0, -4.0, 0.1886447274305459),
    (1.0, 3.0, -30.0, 0.032222222222222326),
    (1.0, 3.0, -200.0, 0.004975),
    (1.0, 3.0, 2.5, 1.3891990337125557),
    (1.3, 0.4, -0.5, 0.01239979593745532),
    (1.3, 0.4, -4.0, -0.304811698757255),
    (1.3, 0.4, -30.0, -0.0026209831966064238),
    (1.3, 0.4, -200.0, -0.0004612011847918722),
    (1.3, 0.4, 2.5, 8.927868200251043),
    (1.3, 1.0, -0.5, 0.633007935002399),
    (1.3, 1.0, -4.0, -0.13119078532708242),
    (1.3, 1.0, -30.0, -0.008243961863526899),
    (1.3, 1.0, -200.0, -0.0011664556086413381),
    (1.3, 1.0, 2.5, 5.873813903960899),
    (1.3, 1.5, -0.5, 0.8641761490739848),
    (1.3, 1.5, -4.0, 0.11557755354156359),
    (1.3, 1.5, -30.0, 0.007108567165053635),
    (1.3, 1.5, -200.0, 0.0010864357386063503),
    (1.3, 1.5, 2.5, 4.004865410148831),
    (1.3, 2.2, -0.5, 0.7703298982688717),
    (1.3, 2.2, -4.0, 0.27916264845996996),
    (1.3, 2.2, -30.0, 0.03150762802101682),
    (1.3, 2.2, -200.0, 0.004685658345060801),
    (1.3, 2.2, 2.5, 2.1506080610907),
    (1.3, 3.0, -0.5, 0.44739719801950834),
    (1.3, 3.0, -4.0, 0.22790960775893732),
    (1.3, 3.0, -30.0, 0.03618108553702106),
    (1.3, 3.0, -200.0, 0.005491454892608849),
    (1.3, 3.0, 2.5, 0.9161080779595949),
    (1.5, 0.4, -0.5, 0.009009718954088407),
    (1.5, 0.4, -4.0, -0.5857053150014577),
    (1.5, 0.4, -30.0, -0.03634103049271519),
    (1.5, 0.4, -200.0, 0.0005427600166214315),
    (1.5, 0.4, 2.5, 6.091358637708108),
    (1.5, 1.0, -0.5, 0.6632367948724279),
    (1.5, 1.0, -4.0, -0.27242487890994055),
    (1.5, 1.0, -30.0, -0.014470224834105875),
    (1.5, 1.0, -200.0, -0.0014100242479369773),
    (1.5, 1.0, 2.5, 4.282750873334018),
    (1.5, 1.5, -0.5, 0.8988630755460688),
    (1.5, 1.5, -4.0, 0.0852429137916968),
    (1.5, 1.5, -30.0, 0.0013125597381136679),
    (1.5, 1.5, -200.0, -1.057638074470454e-05),
    (1.5, 1.5, 2.5, 3.069439635752031),
    (1.5, 2.2, -0.5, 0.7950979474934851),
    (1.5, 2.2, -4.0, 0.3138080678311424),
    (1.5, 2.2, -30.0, 0.026482699715870476),
    (1.5, 2.2, -200.0, 0.003856183841291318),
    (1.5, 2.2, 2.5, 1.7424092592029612),
    (1.5, 3.0, -0.5, 0.4590321830988876),
    (1.5, 3.0, -4.0, 0.26078406332595394),
    (1.5, 3.0, -30.0, 0.0375688869119133),
    (1.5, 3.0, -200.0, 0.005641948717381286),
    (1.5, 3.0, 2.5, 0.7764241874626074),
    (1.9, 0.4, -0.5, 0.053634437400481884),
    (1.9, 0.4, -4.0, -1.316730575289586),
    (1.9, 0.4, -30.0, 1.474531332530962),
    (1.9, 0.4, -200.0, -0.12110349117473432),
    (1.9, 0.4, 2.5, 3.517138042354548),
    (1.9, 1.0, -0.5, 0.7400968457440944),
    (1.9, 1.0, -4.0, -0.43285886596344425),
    (1.9, 1.0, -30.0, 0.6080477780020128),
    (1.9, 1.0, -200.0, -0.24242945579593908),
    (1.9, 1.0, 2.5, 2.7586192195558614),
    (1.9, 1.5, -0.5, 0.9671095365132669),
    (1.9, 1.5, -4.0, 0.15074813501579679),
    (1.9, 1.5, -30.0, 0.10110559290400989),
    (1.9, 1.5, -200.0, -0.06578088011618702),
    (1.9, 1.5, 2.5, 2.146788410542712),
    (1.9, 2.2, -0.5, 0.836263793933679),
    (1.9, 2.2, -4.0, 0.439320943243683),
    (1.9, 2.2, -30.0, -0.03903167613968963),
    (1.9, 2.2, -200.0, 0.0008758462504565691),
    (1.9, 2.2, 2.5, 1.3306165668006695),
    (1.9, 3.0, -0.5, 0.47630489337932486),
    (1.9, 3.0, -4.0, 0.33584833039717626),
    (1.9, 3.0, -30.0, 0.019327830944837025),
    (1.9, 3.0, -200.0, 0.006244139253250067),
    (1.9, 3.0, 2.5, 0.6343096675277149),
    (2.0, 0.4, -0.5, 0.0724533217838443),
    (2.0, 0.4, -4.0, -1.4352310070175158),
    (2.0, 0.4, -30.0, 2.7600440144118807),
    (2.0, 0.4, -200.0, -3.9774060375686324),
    (2.0, 0.4, 2.5, 3.148454377825231),
    (2.0, 1.0, -0.5, 0.7602445970756302),
    (2.0, 1.0, -4.0, -0.4161468365471424),
    (2.0, 1.0, -30.0, 0.6924191115937478),
    (2.0, 1.0, -200.0, -0.004968662132593773),
    (2.0, 1.0, 2.5, 2.5331142957652446),
    (2.0, 1.5, -0.5, 0.9826385407893676),
    (2.0, 1.5, -4.0, 0.19831266161222919),
    (2.0, 1.5, -30.0, -0.01734279695170699),
    (2.0, 1.5, -200.0, 0.18570775499246303),
    (2.0, 1.5, 2.5, 2.0087229651229475),
    (2.0, 2.2, -0.5, 0.8446025187606837),
    (2.0, 2.2, -4.0, 0.4783377299624761),
    (2.0, 2.2, -30.0, -0.10997567319969724),
    (2.0, 2.2, -200.0, 0.04073533708580839),
    (2.0, 2.2, 2.5, 1.268935889985807),
    (2.0, 3.0, -0.5, 0.4795108058487397),
    (2.0, 3.0, -4.0, 0.3540367091367856),
    (2.0, 3.0, -30.0, 0.010252696280208405),
    (2.0, 3.0, -200.0, 0.005024843310662969),
    (2.0, 3.0, 2.5, 0.6132457183060979),
];
pub const MULTIVARIATE: &[(&[f64], f64, &[f64], f64)] = &[
    (&[0.7, 1.3], 1.0, &[0.3, -1.1], 0.45489881314364),
    (
        &[1.692, 0.874, 1.675],
        1.231,
        &[0.544, -0.504, -1.454],
        0.42821111787484506,
    ),
    (
        &[1.453, 1.832, 0.511],
        0.6,
        &[-0.533, -0.691, 0.125],
        -0.14690081237135258,
    ),
    (&[0.512, 0.645], 0.507, &[-0.69, 0.727], 0.6471144475935297),
    (&[0.657, 1.955], 1.744, &[0.471, -0.489], 1.4275739635427787),
    (&[1.755, 0.395], 1.994, &[0.0, -0.747], 0.6171073901457154),
    (&[1.718, 1.208], 2.37, &[0.354, 0.709], 1.1183073283239862),
    (
        &[1.748, 0.351, 1.691],
        2.366,
        &[-0.099, -0.524, 0.297],
        0.6002633764061812,
    ),
    (
        &[1.05, 1.642, 0.402],
        1.629,
        &[-1.015, 1.188, 0.654],
        1.760214287305514,
    ),
    (
        &[0.794, 1.618, 0.854],
        0.917,
        &[-0.092, -1.471, 0.76],
        0.5190114011222181,
    ),
    (&[1.915, 0.722], 1.219, &[0.0, 0.461], 1.749912842656608),
    (&[1.486, 1.237], 0.792, &[1.001, -1.297], 0.5292119376477908),
    (&[1.78, 1.611], 1.025, &[0.186, -0.275], 0.9392343105324424),
    (
        &[1.939, 0.53, 0.705],
        2.398,
        &[-0.56, -0.238, -1.369],
        0.3763324774062715,
    ),
    (&[0.677, 1.138], 2.465, &[0.367, -0.999], 0.6672814259895136),
    (&[1.358, 1.561], 2.148, &[0.0, 1.074], 1.2219783006189953),
    (
        &[1.057, 1.588, 1.648],
        1.847,
        &[0.688, -0.487, 0.903],
        1.7048866526908732,
    ),
    (
        &[1.905, 0.789],
        1.222,
        &[-0.978, -0.914],
        0.3320362039386221,
    ),
    (&[1.859, 0.992], 2.319, &[0.112, -1.298], 0.5208566728681577),
    (
        &[0.841, 1.647, 0.769],
        1.744,
        &[-1.389, 0.047, -0.042],
        0.5131059006307138,
    ),
    (
        &[0.808, 1.635, 1.006],
        1.585,
        &[0.0, -1.26, -0.679],
        0.4578957378461632,
    ),
    (
        &[1.174, 0.594],
        1.371,
        &[-0.497, -0.979],
        0.4397937875456308,
    ),
    (
        &[1.648, 1.703],
        1.988,
        &[-0.835, -1.214],
        0.5869320028824783,
    ),
    (&[1.637, 0.528], 1.7, &[1.016, -0.859], 0.8093826446132389),
    (&[1.894, 1.195], 1.747, &[0.689, 0.701], 1.7853195859196833),
];
