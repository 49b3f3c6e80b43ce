#include "drham/fixtures.hpp"

namespace drham {

namespace {

const PrintedDensity kKdv[] = {
    {1, -1, "u"},
    {1, 0, "u^2/2 + eps^2*u_2/24"},
    {1, 1, "u^3/6 + eps^2*u*u_2/24 + eps^4*u_4/1152"},
    {1, 2, "u^4/24 + eps^2*u^2*u_2/48 + eps^4*(7*u_2^2/5760 + u*u_4/1152) + eps^6*u_6/82944"},
    {1, 3, "u^5/120 + eps^2*u^3*u_2/144 + eps^4*(7*u*u_2^2/5760 + u^2*u_4/2304) + eps^6*(u_3^2/362880 "
         "+ u_2*u_4/15360 + u*u_6/82944) + eps^8*u_8/7962624"},
};

const PrintedDensity k3Spin[] = {
    {1, -1,
     "u2"},
    {2, -1,
     "u1"},
    {1, 0,
     "u1*u2+1/12*u1_2*eps^2"},
    {2, 0,
     "(u1^2)/2+(u2^3)/18+(1/72*u2_1^2+1/36*u2*u2_2)*eps^2+1/864*u2_4*eps^4"},
    {1, 1,
     "1/2*u1^2*u2+(u2^4)/36+(1/72*u2*u2_1^2+1/12*u1*u1_2+1/36*u2^2*u2_2)*eps^2+((7*u2_2^2)/2160"
         "+(7*u2_1*u2_3)/2160+1/432*u2*u2_4)*eps^4+(u2_6*eps^6)/15552"},
    {2, 1,
     "(u1^3)/6+1/18*u1*u2^3+(1/72*u1*u2_1^2+1/72*u2^2*u1_2+1/36*u1*u2*u2_2)*eps^2+(1/432*u1_2*u2_2"
         "+(u2_1*u1_3)/1080+1/864*u2*u1_4+1/864*u1*u2_4)*eps^4+(u1_6*eps^6)/31104"},
    {1, 2,
     "(1/6*u1^3*u2+1/36*u1*u2^4)+(1/72*u1*u2*u2_1^2+1/24*u1^2*u1_2+1/108*u2^3*u1_2"
         "+1/36*u1*u2^2*u2_2)*eps^2+((7*u2_1^2*u1_2)/4320+1/180*u2*u1_2*u2_2+(7*u1*u2_2^2)/2160"
         "+(u2*u2_1*u1_3)/1080+(7*u1*u2_1*u2_3)/2160+1/864*u2^2*u1_4+1/432*u1*u2*u2_4)*eps^4+((u1_3*u2_3)/7776"
         "+(7*u2_2*u1_4)/25920+(u1_2*u2_4)/4032+(u2_1*u1_5)/12960+(u2*u1_6)/15552+(u1*u2_6)/15552)*eps^6"
         "+(u1_8*eps^8)/746496"},
    {2, 2,
     "(u1^4)/24+1/36*u1^2*u2^3+(u2^6)/1620+(1/144*u1^2*u2_1^2+(u2^3*u2_1^2)/1296+1/72*u1*u2^2*u1_2"
         "+1/72*u1^2*u2*u2_2+1/648*u2^4*u2_2)*eps^2+((7*u2_1^4)/51840+(7*u2*u1_2^2)/4320"
         "+(7*u2*u2_1^2*u2_2)/12960+(u1*u1_2*u2_2)/432+(7*u2^2*u2_2^2)/6480+(u1*u2_1*u1_3)/1080"
         "+(7*u2^2*u2_1*u2_3)/12960+(u1*u2*u1_4)/864+(u1^2*u2_4)/1728+(u2^3*u2_4)/3888)*eps^4"
         "+((11*u2_2^3)/116640+(u1_3^2)/34020+(13*u2_1*u2_2*u2_3)/77760+(41*u2*u2_3^2)/466560"
         "+(11*u1_2*u1_4)/72576+(17*u2_1^2*u2_4)/311040+(u2*u2_2*u2_4)/4320+(u2*u2_1*u2_5)/17280"
         "+(u1*u1_6)/31104+(u2^2*u2_6)/46656)*eps^6+((47*u2_4^2)/5598720+(61*u2_3*u2_5)/5598720"
         "+(11*u2_2*u2_6)/1399680+(11*u2_1*u2_7)/5598720+(u2*u2_8)/1119744)*eps^8+(u2_10*eps^10)/67184640"},
};

const PrintedDensity k4Spin[] = {
    {1, -1,
     "u3"},
    {2, -1,
     "u2"},
    {3, -1,
     "u1"},
    {1, 0,
     "((u2^2)/2+u1*u3)+(1/96*u3_1^2+(u1_2/8)+1/96*u3*u3_2)*eps^2+(3*u3_4*eps^4)/2560"},
    {2, 0,
     "(u1*u2+1/8*u2*u3^2)+(1/24*u2_1*u3_1+1/24*u3*u2_2+1/32*u2*u3_2)*eps^2+1/320*u2_4*eps^4"},
    {3, 0,
     "((u1^2)/2+1/8*u2^2*u3+(u3^4)/192)+(1/96*u2_1^2+1/128*u3*u3_1^2+1/96*u3*u1_2+1/32*u2*u2_2"
         "+1/128*u3^2*u3_2)*eps^2+((3*u3_2^2)/2048+1/512*u3_1*u3_3+(3*u1_4)/2560+(u3*u3_4)/1024)*eps^4"
         "+(u3_6*eps^6)/24576"},
    {1, 1,
     "(1/2*u1*u2^2+1/2*u1^2*u3+1/8*u2^2*u3^2+(u3^5)/320)+(1/96*u3*u2_1^2+1/24*u2*u2_1*u3_1+1/96*u1*u3_1^2"
         "+1/128*u3^2*u3_1^2+1/8*u1*u1_2+1/96*u3^2*u1_2+7/96*u2*u3*u2_2+1/32*u2^2*u3_2+1/96*u1*u3*u3_2"
         "+1/128*u3^3*u3_2)*eps^2+(3/512*u2_2^2+1/256*u3_1^2*u3_2+1/320*u1_2*u3_2+(9*u3*u3_2^2)/2048"
         "+1/480*u3_1*u1_3+3/640*u2_1*u2_3+(23*u3*u3_1*u3_3)/4608+(19*u3*u1_4)/7680+(13*u2*u2_4)/2560"
         "+(3*u1*u3_4)/2560+(7*u3^2*u3_4)/4608)*eps^4+((27*u3_3^2)/57344+(93*u3_2*u3_4)/114688"
         "+(101*u3_1*u3_5)/286720+(3*u1_6)/20480+(11*u3*u3_6)/81920)*eps^6+(59*u3_8*eps^8)/13107200"},
    {2, 1,
     "(1/2*u1^2*u2+1/12*u2^3*u3+1/8*u1*u2*u3^2+1/128*u2*u3^4)+(1/96*u2*u2_1^2+1/24*u1*u2_1*u3_1"
         "+1/192*u3^2*u2_1*u3_1+1/96*u2*u3*u3_1^2+1/24*u2*u3*u1_2+1/32*u2^2*u2_2+1/24*u1*u3*u2_2"
         "+1/192*u3^3*u2_2+1/32*u1*u2*u3_2+11/768*u2*u3^2*u3_2)*eps^2+(1/480*u3_1^2*u2_2+1/160*u1_2*u2_2"
         "+(11*u2_1*u3_1*u3_2)/3840+(23*u3*u2_2*u3_2)/3840+(29*u2*u3_2^2)/10240+1/480*u2_1*u1_3"
         "+1/320*u3*u3_1*u2_3+(13*u3*u2_1*u3_3)/5760+1/320*u2*u3_1*u3_3+1/320*u2*u1_4+1/320*u1*u2_4"
         "+(29*u3^2*u2_4)/23040+1/480*u2*u3*u3_4)*eps^4+((3*u2_3*u3_3)/4480+(47*u3_2*u2_4)/71680"
         "+(3*u2_2*u3_4)/5120+(u3_1*u2_5)/3584+(u2_1*u3_5)/5120+(u3*u2_6)/7680+(u2*u3_6)/10240)*eps^6"
         "+(u2_8*eps^8)/204800"},
    {3, 1,
     "((u1^3)/6+(u2^4)/96+1/8*u1*u2^2*u3+1/96*u2^2*u3^3+1/192*u1*u3^4)+(1/96*u1*u2_1^2"
         "+1/96*u2*u3*u2_1*u3_1+1/768*u2^2*u3_1^2+1/128*u1*u3*u3_1^2+(u3^3*u3_1^2)/4608+1/64*u2^2*u1_2"
         "+1/96*u1*u3*u1_2+1/384*u3^3*u1_2+1/32*u1*u2*u2_2+1/96*u2*u3^2*u2_2+7/768*u2^2*u3*u3_2"
         "+1/128*u1*u3^2*u3_2+(u3^4*u3_2)/4608)*eps^2+((u3_1^4)/40960+(7*u3_1^2*u1_2)/9216+(11*u1_2^2)/7680"
         "+(23*u2_1*u3_1*u2_2)/11520+(161*u3*u2_2^2)/92160+(13*u2_1^2*u3_2)/23040+(13*u3*u3_1^2*u3_2)/20480"
         "+(19*u3*u1_2*u3_2)/9216+(31*u2*u2_2*u3_2)/7680+(3*u1*u3_2^2)/2048+(19*u3^2*u3_2^2)/40960"
         "+(u3*u3_1*u1_3)/1152+(17*u3*u2_1*u2_3)/23040+(7*u2*u3_1*u2_3)/3840+(7*u2*u2_1*u3_3)/3840"
         "+1/512*u1*u3_1*u3_3+(7*u3^2*u3_1*u3_3)/15360+(3*u1*u1_4)/2560+(5*u3^2*u1_4)/9216"
         "+(49*u2*u3*u2_4)/30720+(13*u2^2*u3_4)/20480+(u1*u3*u3_4)/1024+(13*u3^3*u3_4)/122880)*eps^4"
         "+((7*u3_2^3)/61440+(33*u2_3^2)/286720+(u3_1*u3_2*u3_3)/2560+(u1_3*u3_3)/7680+(21*u3*u3_3^2)/163840"
         "+(u3_2*u1_4)/5120+(77*u2_2*u2_4)/245760+(33*u3_1^2*u3_4)/327680+(11*u1_2*u3_4)/81920"
         "+(19*u3*u3_2*u3_4)/81920+(3*u3_1*u1_5)/35840+(11*u2_1*u2_5)/122880+(3*u3*u3_1*u3_5)/32768"
         "+(13*u3*u1_6)/245760+(19*u2*u2_6)/245760+(u1*u3_6)/24576+(19*u3^2*u3_6)/983040)*eps^6"
         "+((11*u3_4^2)/655360+(7*u3_3*u3_5)/262144+(379*u3_2*u3_6)/23592960+(61*u3_1*u3_7)/11796480"
         "+(77*u1_8)/39321600+(37*u3*u3_8)/23592960)*eps^8+(u3_10*eps^10)/20971520"},
};

const char k3SpinG11[] =
    "((1/2*u1^2*u2+(u2^4)/36)+(-1/12*u1_1^2-1/24*u2*u2_1^2)*eps^2+1/432*u2_2^2*eps^4)";

const char k4SpinG11[] =
    "((u1*u2^2)/2+(u1^2*u3)/2+(u2^2*u3^2)/8+(u3^5)/320+(-(u1_1^2)/8-(u3*u2_1^2)/16-(u3*u1_1*u3_1)/32"
         "+3/64*u2^2*u3_2+1/192*u3^3*u3_2)*eps^2+(1/160*u2_2^2+3/640*u1_2*u3_2+(5*u3^2*u3_4)/4096)*eps^4"
         "-(u3_3^2*eps^6)/8192)";

}  // namespace

std::span<const PrintedDensity> printed_densities(std::string_view seed) {
    if (seed == "kdv") return kKdv;
    if (seed == "3spin") return k3Spin;
    if (seed == "4spin") return k4Spin;
    return {};
}

std::string_view printed_g11(std::string_view seed) {
    if (seed == "3spin") return k3SpinG11;
    if (seed == "4spin") return k4SpinG11;
    return {};
}

std::string_view printed_4spin_h3_minus1() {
    return "u1 + eps^2*u3_2/96";
}

}  // namespace drham
