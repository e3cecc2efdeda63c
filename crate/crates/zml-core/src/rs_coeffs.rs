// Chebyshev tables (on p in [0,1]) for the Riemann-Siegel correction
// functions C_0..C_4, generated by tools/gen_rs_coeffs.py from a
// high-precision fit against mpmath's siegelz.  Do not edit by hand.

pub const RS_CHEB_LEN: usize = 48;

pub const RS_CHEB: [[f64; 48]; 5] = [
    // C_0
    [
        0.6426672862397683,
        8.018277400070575e-17,
        0.271972999997855,
        6.167905692361981e-17,
        0.010738605819340207,
        6.784696261598178e-17,
        -0.001374381529633855,
        4.9343245538895844e-17,
        -0.00012468221880335254,
        2.0970879354030734e-16,
        -5.764599705996205e-07,
        3.9474596431116675e-16,
        2.7280674275077025e-07,
        -1.2335811384723962e-16,
        8.077952764643268e-09,
        2.4671622769447924e-16,
        -2.0884607623530527e-10,
        -1.4802973661668753e-16,
        -1.3115558022352362e-11,
        -7.401486830834377e-17,
        -1.4402059791665226e-14,
        2.4671622769447922e-17,
        9.823160803297999e-15,
        1.7270135938613544e-16,
        -2.1443109633602197e-16,
        2.7138785046392713e-16,
        -4.167191283402063e-16,
        1.6221591970912009e-15,
        1.4147633681855294e-16,
        -4.2558549277297664e-16,
        -4.46787668590471e-16,
        -6.599659090827319e-16,
        -1.3569392523196356e-16,
        -6.167905692361981e-17,
        5.828670879282072e-16,
        6.908054375445418e-16,
        -3.454027187722709e-16,
        1.4802973661668753e-16,
        -1.6344950084759248e-16,
        4.3175339846533865e-16,
        6.526415210730521e-16,
        6.661338147750939e-16,
        -3.631354476378116e-16,
        1.1410625530869663e-16,
        -4.64134903350239e-16,
        1.6129073385526579e-15,
        7.139350838908993e-16,
        -7.247289188525327e-16,
    ],
    // C_1
    [
        1.831097002419963e-18,
        0.010697913921003,
        3.0839528461809902e-18,
        0.017170651243377882,
        1.1564823173178713e-18,
        0.0027932111497884675,
        1.1564823173178713e-18,
        -3.6375653719284044e-05,
        0.0,
        -2.7108955231157393e-05,
        -1.927470528863119e-18,
        -1.0483749866890858e-06,
        1.5419764230904951e-18,
        5.8864671675235014e-08,
        7.709882115452476e-18,
        4.322967264251224e-09,
        4.047688110612549e-18,
        -1.1369589297816063e-11,
        1.734723475976807e-18,
        -6.699835516623922e-12,
        1.3492293702041833e-17,
        -1.0079976976563721e-13,
        1.3877787807814457e-17,
        5.146442685590971e-15,
        6.5533997981346044e-18,
        1.526797592675698e-16,
        1.2914052543382896e-17,
        -3.168279681818752e-17,
        -1.5323390704461794e-17,
        3.32488666228888e-18,
        1.7925475918427005e-17,
        1.667262007466598e-17,
        1.0793834961633465e-17,
        -1.927470528863119e-18,
        -6.7461468510209164e-18,
        -1.850371707708594e-17,
        7.035267430350384e-18,
        -7.709882115452476e-18,
        8.673617379884035e-18,
        -1.7539981812654382e-17,
        -2.043118760594906e-17,
        -2.0768494948500106e-17,
        1.0986582014519778e-17,
        -7.258131210250182e-18,
        1.281767901693974e-17,
        -1.9587919249571446e-17,
        -1.5227017178018638e-17,
        -5.926971876254091e-18,
    ],
    // C_2
    [
        0.0031461158539889122,
        7.468948299344586e-19,
        -0.0023087838845307503,
        -2.6502719771867883e-19,
        5.7698207666898206e-05,
        1.3251359885933942e-19,
        0.00035238862023665866,
        -1.0842021724855044e-18,
        2.5246667458683763e-05,
        6.866613759074861e-19,
        -3.442821197192689e-06,
        3.373073425510458e-19,
        -3.5350745566293804e-07,
        -1.2649025345664217e-19,
        3.730830182872318e-09,
        8.914551195991924e-19,
        1.2776951878360692e-09,
        -7.709882115452476e-19,
        2.187461670133395e-11,
        -5.782411586589357e-19,
        -1.9141411546075293e-12,
        -2.409338161078899e-19,
        -6.563001010706504e-14,
        1.927470528863119e-19,
        1.25630119733137e-15,
        1.5901631863120731e-18,
        8.158696639770955e-17,
        3.7947076036992655e-18,
        -6.079814265847533e-19,
        -1.4094628242311558e-18,
        -2.0901008547359444e-18,
        -2.3611513978573205e-18,
        -6.023345402697247e-20,
        -1.0601087908747153e-18,
        2.7466455036299444e-18,
        1.5419764230904951e-18,
        -1.734723475976807e-18,
        -1.927470528863119e-18,
        3.614007241618348e-19,
        0.0,
        2.2933887620769764e-18,
        5.180077046319632e-19,
        -5.240310500346604e-19,
        -2.228637798997981e-19,
        3.0643769736222243e-19,
        6.131765619945797e-18,
        7.476477481097957e-19,
        -6.914800522296439e-18,
    ],
    // C_3
    [
        1.0540854454720181e-18,
        7.123256221091656e-05,
        2.4650541060538482e-18,
        0.0002323430529819876,
        -3.4182485160306875e-19,
        -0.00012929912045484514,
        2.0479374369170639e-19,
        1.8074496413695693e-05,
        -5.421010862427522e-20,
        6.526185187219475e-06,
        1.2046690805394493e-20,
        -1.1696365378638856e-07,
        6.3998044903658246e-21,
        -7.349476126477693e-08,
        2.4093381610788986e-20,
        -1.7750910077827257e-09,
        3.764590876685779e-20,
        2.555552960922306e-10,
        3.614007241618348e-20,
        1.1376636571279637e-11,
        1.3251359885933942e-19,
        -3.3498634277364287e-13,
        1.807003620809174e-19,
        -2.5537463612722143e-14,
        1.5359530776877978e-19,
        6.760452296352322e-17,
        8.959726286512154e-20,
        2.9473923121292135e-17,
        -1.3853694426203667e-19,
        3.4841288563726886e-19,
        2.537334250886215e-19,
        6.023345402697247e-20,
        -9.03501810404587e-20,
        -5.1198435922926597e-20,
        -7.453889935837843e-20,
        -8.583267198843576e-20,
        4.856322230924655e-20,
        1.1293772630057337e-20,
        4.517509052022935e-20,
        -1.2046690805394494e-19,
        -1.5058363506743117e-19,
        -1.5208947141810547e-19,
        2.371692252312041e-19,
        -8.658559016377292e-20,
        8.395037655009287e-20,
        -1.807003620809174e-20,
        -1.7015950762619722e-19,
        -1.6375970313583138e-19,
    ],
    // C_4
    [
        0.0001676574524663472,
        1.0270207743497313e-12,
        -0.0002272876894360873,
        -3.1070288047557076e-13,
        6.477387188470797e-05,
        1.101427524380475e-13,
        -8.492200500261228e-06,
        -2.2237301277474984e-14,
        -2.6161407244674696e-06,
        8.271555309663117e-16,
        8.336764968604385e-07,
        9.454655166774594e-16,
        6.324704037669527e-08,
        -2.4571334068493015e-16,
        -1.0059949402867644e-08,
        9.233788502334878e-18,
        -7.822677203753836e-10,
        4.071781492223338e-18,
        3.167658291822966e-11,
        -2.5298050691328434e-19,
        3.5006944656929303e-12,
        -6.023345402697247e-20,
        -1.4314885419488337e-14,
        1.5058363506743116e-21,
        -7.269571049006255e-15,
        1.098789962132662e-19,
        -8.778075365234874e-17,
        7.548004707754987e-20,
        8.143562984446677e-18,
        -6.291572502661108e-20,
        1.0333801956502464e-19,
        -1.3025484433332796e-19,
        2.7857972487474764e-20,
        -8.733850833911007e-20,
        1.7768868937956878e-19,
        1.0842021724855044e-19,
        -1.0239687184585319e-19,
        -1.0842021724855044e-19,
        -6.0233454026972465e-21,
        -3.0116727013486233e-21,
        1.9801748011367199e-19,
        -3.764590876685779e-20,
        -3.614007241618348e-20,
        -7.482124367412986e-20,
        1.139259314057034e-19,
        2.940616048551179e-19,
        2.1152294988378222e-20,
        -5.005494144413329e-19,
    ],
];
