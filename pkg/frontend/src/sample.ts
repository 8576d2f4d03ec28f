/** Bundled demonstration network: three city transport layers over a
 * shared station set, with coordinates so every mode has something to
 * show before the user loads their own file. */

import { NetworkDocument } from "./types.js";

export const SAMPLE_NETWORK: NetworkDocument = {
  directed: false,
  directed_interlayer: false,
  layers: [
    { layer_id: "bus", display_name: "Bus", latitude: 52.52, longitude: 13.405 },
    { layer_id: "tram", display_name: "Tram", latitude: 48.2082, longitude: 16.3738 },
    { layer_id: "rail", display_name: "Rail", latitude: 47.4979, longitude: 19.0402 },
  ],
  nodes: [
    { node_id: "central" },
    { node_id: "harbor" },
    { node_id: "market" },
    { node_id: "museum" },
    { node_id: "park" },
    { node_id: "stadium" },
  ],
  state_nodes: [
    { layer_id: "bus", node_id: "central" },
    { layer_id: "bus", node_id: "harbor" },
    { layer_id: "bus", node_id: "market" },
    { layer_id: "bus", node_id: "park" },
    { layer_id: "bus", node_id: "stadium" },
    { layer_id: "tram", node_id: "central" },
    { layer_id: "tram", node_id: "market" },
    { layer_id: "tram", node_id: "museum" },
    { layer_id: "tram", node_id: "park" },
    { layer_id: "rail", node_id: "central" },
    { layer_id: "rail", node_id: "harbor" },
    { layer_id: "rail", node_id: "stadium" },
  ],
  extended: [
    { layer_from: "bus", node_from: "central", layer_to: "bus", node_to: "harbor", weight: 0.9 },
    { layer_from: "bus", node_from: "central", layer_to: "bus", node_to: "market", weight: 0.55 },
    { layer_from: "bus", node_from: "market", layer_to: "bus", node_to: "park", weight: 0.3 },
    { layer_from: "bus", node_from: "park", layer_to: "bus", node_to: "stadium", weight: 1.4 },
    { layer_from: "tram", node_from: "central", layer_to: "tram", node_to: "market", weight: 2.0 },
    { layer_from: "tram", node_from: "market", layer_to: "tram", node_to: "museum", weight: 0.8 },
    { layer_from: "tram", node_from: "museum", layer_to: "tram", node_to: "park", weight: 0.6 },
    { layer_from: "rail", node_from: "central", layer_to: "rail", node_to: "harbor", weight: 3.1 },
    { layer_from: "rail", node_from: "harbor", layer_to: "rail", node_to: "stadium", weight: 1.1 },
    { layer_from: "bus", node_from: "central", layer_to: "tram", node_to: "central", weight: 1.0 },
    { layer_from: "tram", node_from: "central", layer_to: "rail", node_to: "central", weight: 1.0 },
    { layer_from: "bus", node_from: "market", layer_to: "tram", node_to: "market", weight: 0.5 },
    { layer_from: "bus", node_from: "park", layer_to: "tram", node_to: "park", weight: 0.5 },
    { layer_from: "bus", node_from: "stadium", layer_to: "rail", node_to: "stadium", weight: 0.7 },
    { layer_from: "bus", node_from: "harbor", layer_to: "rail", node_to: "harbor", weight: 0.7 },
  ],
};
