#include "atasim/architecture.hpp"

#include "atasim/crossbar.hpp"

namespace atasim {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::TagLookup: return "tag";
    case Stage::LocalData: return "local_data";
    case Stage::IntraHop: return "intra_hop";
    case Stage::RemoteTagProbe: return "remote_tag_probe";
    case Stage::RemoteData: return "remote_data";
    case Stage::GlobalHop: return "global_hop";
    case Stage::L2Access: return "l2";
    case Stage::Fill: return "fill";
  }
  return "?";
}

ArchitecturePipeline describe_pipeline(Architecture arch) {
  using S = Stage;
  ArchitecturePipeline p;
  p.variant = arch;
  switch (arch) {
    case Architecture::Private:
      p.local_hit = {S::TagLookup, S::LocalData};
      p.miss = {S::TagLookup, S::GlobalHop, S::L2Access, S::GlobalHop, S::Fill};
      break;
    case Architecture::RemoteSharing:
      p.probes_on_miss = true;
      p.local_hit = {S::TagLookup, S::LocalData};
      p.remote_hit = {S::TagLookup, S::IntraHop, S::RemoteTagProbe, S::RemoteData, S::IntraHop,
                      S::Fill};
      p.miss = {S::TagLookup, S::IntraHop,  S::RemoteTagProbe, S::IntraHop,
                S::GlobalHop, S::L2Access, S::GlobalHop,      S::Fill};
      break;
    case Architecture::DecoupledSharing:
      p.noc_to_l1 = true;
      p.replicates = false;
      p.local_hit = {S::IntraHop, S::TagLookup, S::RemoteData, S::IntraHop};
      p.miss = {S::IntraHop, S::TagLookup, S::GlobalHop, S::L2Access,
                S::GlobalHop, S::Fill, S::IntraHop};
      break;
    case Architecture::AtaCache:
      p.aggregated_tags = true;
      p.local_hit = {S::TagLookup, S::LocalData};
      p.remote_hit = {S::TagLookup, S::IntraHop, S::RemoteData, S::IntraHop, S::Fill};
      p.miss = {S::TagLookup, S::GlobalHop, S::L2Access, S::GlobalHop, S::Fill};
      break;
  }
  return p;
}

IdleLatency idle_latency(const SimConfig& c, Architecture arch) {
  const MessageSizes sizes;
  auto hop = [&](std::uint64_t bytes) {
    return std::max<std::uint64_t>(1, (bytes + c.flit_bytes - 1) / c.flit_bytes) + c.t_xbar_hop;
  };
  const Cycle req = hop(sizes.request);
  const Cycle data = hop(sizes.sector);
  IdleLatency out;
  out.probe_round_trip = req + 1 + hop(sizes.request);
  const Cycle l2_round = req + c.t_l2 + data;
  switch (arch) {
    case Architecture::Private:
    case Architecture::AtaCache:
    case Architecture::RemoteSharing:
      out.local_hit = c.t_tag + c.t_data;
      out.l2_hit_miss = c.t_tag + l2_round + c.t_data;
      if (arch == Architecture::RemoteSharing) out.l2_hit_miss += out.probe_round_trip;
      out.l2_miss = out.l2_hit_miss + c.t_mem;
      if (arch == Architecture::AtaCache) {
        out.remote_hit = c.t_tag + req + c.t_data + data + c.t_data;
      } else if (arch == Architecture::RemoteSharing) {
        out.remote_hit = c.t_tag + req + 1 + c.t_data + data + c.t_data;
      }
      break;
    case Architecture::DecoupledSharing:
      out.local_hit = req + c.t_tag + c.t_data + data;
      out.l2_hit_miss = req + c.t_tag + l2_round + c.t_data + data;
      out.l2_miss = out.l2_hit_miss + c.t_mem;
      break;
  }
  return out;
}

}  // namespace atasim
