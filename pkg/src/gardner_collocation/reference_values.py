"""Reference values for the three experiments, kept as printed strings."""

# L-inf errors of the pulse run; per N: (err(2.5) lam=0, lam*, err(2.5) lam*, err(5) lam=0, err(5) lam*)
PULSE_ERRORS = {
    100: ("3.2726e-5", "-0.00840", "1.2330e-5", "5.22606e-5", "2.2789e-5"),
    200: ("2.0537e-5", "-0.00280", "1.4819e-5", "1.91604e-5", "1.9119e-5"),
    300: ("1.4428e-5", "-0.00094", "1.2509e-5", "1.70403e-5", "1.6944e-5"),
    400: ("1.4452e-5", "-0.00178", "1.4440e-5", "1.61150e-5", "1.5872e-5"),
}

# (M0, E0, H0, C(M5), C(E5), C(H5))
PULSE_INVARIANTS = {
    100: ("1.0445", "0.0601", "0.0040", "5.4748e-6", "3.8176e-8", "1.5233e-6"),
    200: ("1.0445", "0.0601", "0.0040", "3.2669e-6", "5.1126e-8", "1.7003e-6"),
    300: ("1.0445", "0.0601", "0.0040", "2.4190e-7", "2.1767e-8", "2.8351e-6"),
    400: ("1.0445", "0.0601", "0.0040", "1.3753e-6", "2.0910e-10", "3.3939e-6"),
}

# (err(4) lam=0, lam*, err(4) lam*, err(12) lam=0, err(12) lam*)
KINK_ERRORS = {
    100: ("8.4150e-6", "-0.01850", "3.8974e-6", "2.3158e-5", "1.2330e-5"),
    200: ("2.1207e-6", "-0.00574", "1.0194e-6", "5.9956e-6", "2.9662e-6"),
    400: ("5.3296e-7", "-0.00115", "2.5440e-7", "1.5016e-6", "7.7413e-7"),
    600: ("2.2377e-7", "-0.00057", "1.1335e-7", "6.6655e-7", "3.3921e-7"),
    800: ("1.4601e-7", "-0.00024", "6.3749e-8", "5.2835e-6", "5.2779e-6"),
}

# (M0, E0, H0, C(M12), C(E12), C(H12)); M0..H0 are nodal sums h * sum_j g(x_j)
KINK_INVARIANTS = {
    100: ("16.1599", "3.0129", "0.0979", "4.9504e-3", "5.3104e-3", "5.4423e-3"),
    200: ("16.0799", "2.9969", "0.0974", "4.9751e-3", "5.3388e-3", "5.4721e-3"),
    400: ("16.0399", "2.9889", "0.0972", "4.9875e-3", "5.3531e-3", "5.4871e-3"),
    600: ("16.0266", "2.9862", "0.0971", "4.9916e-3", "5.3578e-3", "5.4922e-3"),
    800: ("16.0199", "2.9849", "0.0970", "4.9938e-3", "5.3603e-3", "4.9481e-3"),
}

# per t: (M0, E0, H0, C(M_t), C(E_t), C(H_t))
GENERATION_INVARIANTS = {
    5.0: ("5.2255", "1.5033", "1.5994", "8.0719e-7", "3.0588e-5", "1.2886e-3"),
    10.0: ("5.2255", "1.5033", "1.5994", "2.7652e-6", "4.1342e-5", "1.8485e-3"),
    15.0: ("5.2255", "1.5033", "1.5994", "7.0380e-6", "6.1132e-4", "2.1571e-3"),
}

# wave crests (x, height) of the generation run, frontier first
GENERATION_CRESTS = {
    5.0: ((18.25, 0.6568), (12.0, 0.3318)),
    10.0: ((28.75, 0.6871), (18.25, 0.3913), (9.75, 0.1736)),
    15.0: ((39.0, 0.6941), (24.75, 0.3998), (13.0, 0.1910)),
}
