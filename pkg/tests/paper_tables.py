"""Published resource tables for three device/folding settings.

Each row: pipeline, T, S, R, REM lin, REM quad, PSR lin, PSR quad, M lin,
M quad. ``None`` marks a dash (pipeline not significant). The P2E lin M
cell is typeset as "1$2.5056$" in the source and read as 12.5056.
"""

LAGOS_LOCAL = [
    ('P1', 1.4662, 0.9434, 2.8494, 0.9739, 0.9973, 0.8236, 0.5118, 29.6773, 18.0106),
    ('P2', 1.5979, 1.3786, 3.8006, 0.9697, 1.0018, 0.8258, None, 22.4069, None),
    ('P3', 1.4662, 0.9434, 2.8494, 0.5397, 0.3126, 0.9858, 0.9352, 64.1009, 104.9981),
    ('P4', 1.5979, 1.3786, 3.8006, 0.5097, 0.2435, 0.9609, 0.9339, 49.602, 100.9129),
    ('P5', 1.5413, 4.8539, 9.0227, 1.0229, 0.9963, None, 0.5143, None, 5.7214),
    ('P6', 1.673, 4.9656, 9.9802, 1.0182, 0.984, None, 0.5513, None, 5.6135),
    ('P7', 1.5413, 4.8539, 9.0227, 0.3634, 0.1848, 1.0, 0.9994, 30.4985, 59.9354),
    ('P8', 1.673, 4.9656, 9.9802, 0.2815, 0.0992, 1.0, 0.9981, 35.5945, 100.8167),
    ('P1E', 2.9293, 1.6361, 7.722, 0.8613, 1.064, 0.9398, None, 14.1304, None),
    ('P2E', 3.0609, 1.8624, 8.7614, 0.8586, 1.0737, 0.9407, None, 12.5056, None),
    ('P3E', 2.9293, 1.6361, 7.722, 0.3569, 0.1784, 0.8948, 0.8941, 32.469, 64.904),
    ('P4E', 3.0609, 1.8624, 8.7614, 0.3623, 0.182, 0.8951, 0.8941, 28.2002, 56.0726),
    ('P5E', 3.0806, 5.547, 20.1687, 0.9973, 0.9471, 0.5086, 0.628, 2.5286, 3.2875),
    ('P6E', 3.2122, 5.6044, 21.2147, 0.9929, 0.9363, 0.5217, 0.6522, 2.4768, 3.2836),
    ('P7E', 3.0806, 5.547, 20.1687, 0.117, 0.124, 0.9915, 0.978, 42.0164, 39.1058),
    ('P8E', 3.2122, 5.6044, 21.2147, 0.1527, 0.1583, 0.992, 0.9736, 30.6233, 28.9921),
]

PERTH_LOCAL = [
    ('P1', 1.1863, 0.9439, 2.3061, 0.9785, 0.8899, 0.7251, 0.8897, 32.1352, 43.354),
    ('P2', 1.2998, 1.3996, 3.1189, 0.9657, 0.8624, 0.7308, 0.8741, 24.2635, 32.4991),
    ('P3', 1.1863, 0.9439, 2.3061, 0.6899, 0.4267, 0.9623, 0.9948, 60.4875, 101.0925),
    ('P4', 1.2998, 1.3996, 3.1189, 0.595, 0.3007, 0.9055, 0.9811, 48.7956, 104.6124),
    ('P5', 1.2613, 4.8542, 7.3839, 0.915, 0.7643, 0.5868, 0.8701, 8.685, 15.4168),
    ('P6', 1.3747, 4.9673, 8.2034, 0.8683, 0.6633, 0.6648, 0.8893, 9.3333, 16.3435),
    ('P7', 1.2613, 4.8542, 7.3839, 0.5947, 0.4376, 0.9918, 0.9878, 22.5863, 30.5717),
    ('P8', 1.3747, 4.9673, 8.2034, 0.486, 0.2973, 0.9955, 0.9777, 24.9685, 40.0875),
    ('P1E', 2.3695, 1.6365, 6.2473, 0.8004, 0.7445, 0.8633, 0.7506, 17.265, 16.1384),
    ('P2E', 2.4829, 1.874, 7.136, 0.7818, 0.7673, 0.8715, 0.7237, 15.621, 13.2176),
    ('P3E', 2.3695, 1.6365, 6.2473, 0.4381, 0.6286, 0.8072, 0.7194, 29.4923, 18.3186),
    ('P4E', 2.4829, 1.874, 7.136, 0.486, 0.7369, 0.7951, 0.6646, 22.9262, 12.6388),
    ('P5E', 2.5204, 5.5473, 16.5019, 0.6751, 0.402, 0.8575, 0.8498, 7.6971, 12.8107),
    ('P6E', 2.6339, 5.6053, 17.3975, 0.6288, 0.3678, 0.8535, 0.8553, 7.802, 13.3672),
    ('P7E', 2.5204, 5.5473, 16.5019, 0.1578, 0.1625, 0.9258, 0.9363, 35.554, 34.9154),
    ('P8E', 2.6339, 5.6053, 17.3975, 0.247, 0.2449, 0.9332, 0.9322, 21.7159, 21.8802),
]

PERTH_GLOBAL = [
    ('P1', 1.0519, 0.9658, 2.0679, 0.9716, 0.8013, 0.8075, 0.9439, 40.1902, 56.9615),
    ('P2', 1.1654, 1.4608, 2.8678, 0.9407, 0.7622, 0.873, 0.9104, 32.3611, 41.648),
    ('P3', 1.0519, 0.9658, 2.0679, 0.5898, 0.379, 0.9671, 0.9983, 79.2916, 127.371),
    ('P4', 1.1654, 1.4608, 2.8678, 0.4985, 0.2619, 0.9116, 0.9899, 63.7657, 131.8003),
    ('P5', 1.1052, 4.8783, 6.4966, 0.8606, 0.6374, 0.7162, 0.8743, 12.8108, 21.1147),
    ('P6', 1.2186, 4.9919, 7.3018, 0.7668, 0.5241, 0.7813, 0.893, 13.9544, 23.3348),
    ('P7', 1.1052, 4.8783, 6.4966, 0.6216, 0.4019, 1.0, 1.0, 24.763, 38.2997),
    ('P8', 1.2186, 4.9919, 7.3018, 0.4845, 0.2521, 1.0, 1.0, 28.2668, 54.3247),
    ('P1E', 2.0943, 1.6591, 5.5689, 0.6427, 0.5101, 0.9272, 0.9549, 25.9049, 33.6152),
    ('P2E', 2.2077, 1.9188, 6.4439, 0.6353, 0.5156, 0.9272, 0.96, 22.6481, 28.8952),
    ('P3E', 2.0943, 1.6591, 5.5689, 0.4377, 0.5268, 0.8375, 0.7897, 34.3588, 26.9191),
    ('P4E', 2.2077, 1.9188, 6.4439, 0.4588, 0.5708, 0.8426, 0.7585, 28.5001, 20.6219),
    ('P5E', 2.2078, 5.5713, 14.508, 0.5308, 0.336, 0.887, 0.8615, 11.5188, 17.6723),
    ('P6E', 2.3212, 5.6297, 15.3889, 0.4968, 0.3043, 0.8838, 0.8584, 11.5597, 18.3308),
    ('P7E', 2.2078, 5.5713, 14.508, 0.1446, 0.1287, 0.9862, 0.9858, 47.0095, 52.7939),
    ('P8E', 2.3212, 5.6297, 15.3889, 0.1934, 0.1457, 0.9777, 0.9822, 32.8499, 43.8053),
]
