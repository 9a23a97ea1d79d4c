package com.example.transfer;

import android.mtp.MtpDevice;

public class DeviceInfo {
    MtpDevice device;

    String describe() {
        return device.getDeviceName();
    }
}
