#pragma once

// Reference values frozen from tests/oracles/derive.py (numpy, independent of
// the library). Regenerate with: python3 tests/oracles/derive.py

namespace oracle {

inline constexpr double kParallelR_2_2_1024 = 42.0;
inline constexpr double kParallelR_2_1_8 = 18.0;
inline constexpr double kGlue_0_0_2_1024 = 0.01953125;
inline constexpr double kGlue_01_0_1_8 = 0.7875000000000001;
inline constexpr double kGlue_0_0_1_8 = 0.625;
inline constexpr double kGlueChainExact = 0.466954734741744;
inline constexpr double kGlueChainExp = 3.0173601185911147;
inline constexpr double kParallelDeltaDerived_2_1_16_10 = 1.8045693562372267;
inline constexpr double kParallelDeltaStated_2_2_64_8 = 1.5060973145850306e+35;
inline constexpr double kParallelDeltaDerived_2_2_64_8 = 32.11545195869231;
inline constexpr double kParallelLambda_2_2_1024_1 = 0.012593284905992715;
inline constexpr double kCqk_2_2 = 6674302407.6936245;
inline constexpr double kParallelDepth_2_1_8 = 68.0;
inline constexpr double kTreeSites = 44.0;
inline constexpr double kTreeF = 366.0;
inline constexpr double kTreeLambda = 1.1384335154826958e-05;
inline constexpr double kBeta_01_01 = 0.5305485460082525;
inline constexpr double kCompose_05_03 = 0.15916456380247576;
inline constexpr double kContinuity_01_5 = 0.8350997070841619;
inline constexpr long long kAdditiveDepth = 1110;
inline constexpr double kRelEntropyBits = 0.18872187554086717;
inline constexpr double kPinskerPureVsMixed = -0.3862943611198906;
inline constexpr double kSpuriousMean_100_50 = 495.0;
inline constexpr double kSpuriousSd_100_50 = 21.106870919205434;
inline constexpr double kDepol09Eps = 0.1;
inline constexpr double kDepol09Delta = 0.3;
inline constexpr int kCbDepolHalf = 3;
inline constexpr double kBrickworkK2RatioZeroState = 0.015134451811436637;
inline constexpr double kBrickworkK2Den = 4.912654885736052;
inline constexpr double kGlueMeasuredEps = 0.0;
inline constexpr double kGlueMeasuredDelta = 0.0;

}  // namespace oracle
