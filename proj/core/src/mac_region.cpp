#include "d2d/mac_region.hpp"

namespace d2d {

namespace {

DecodePath two_user_decode(const MacState& s) {
  if (fits(s.r_sig, capacity(sinr(s.sig, s.intf)))) return DecodePath::DirectDecode;
  if (fits(s.r_int, capacity(sinr(s.intf, s.sig))) && fits(s.r_sig, capacity(s.sig))) {
    return DecodePath::OicDecode;
  }
  return DecodePath::Undecodable;
}

}  // namespace

std::string_view to_string(DecodePath p) {
  switch (p) {
    case DecodePath::DirectDecode: return "direct";
    case DecodePath::OicDecode: return "oic";
    case DecodePath::Undecodable: return "undecodable";
  }
  return "?";
}

DecodePath classify_mi_at_ui(const MacState& s) { return two_user_decode(s); }

DecodePath classify_uj_at_b(const MacState& s) { return two_user_decode(s); }

RateCeiling max_rate_b_at_ui(Snr b, Snr m, double r_m) {
  if (!fits(r_m, capacity(m))) return RateCeiling::at_most(0.0);
  if (fits(r_m, capacity(sinr(m, b)))) return RateCeiling::unbounded();
  return RateCeiling::at_most(capacity(sinr(b, m)));
}

double uj_rate_ceiling_at_b(Snr uj, Snr ui, double r_m) {
  if (fits(r_m, capacity(sinr(ui, uj)))) return capacity(uj);
  return capacity(sinr(uj, ui));
}

}  // namespace d2d
