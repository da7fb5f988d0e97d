// Wire types mirroring the service API and descriptor schema.
export const VARIANTS = ["baseline", "emoji", "emoji+color"];
